from linmba.generate.__truth import TruthMatrix
from linmba.generate.__generate import (
    DEFAULT_NAMES, GeneratorSpec, anchor_expression, encode_affine, obfuscate, random_affine, random_bitwise,
    random_coefficient, zero_mba
)
from linmba.generate.__dataset import (
    dataset_comments, emit_dataset, encoded_target, generate_records, ground_truth
)
