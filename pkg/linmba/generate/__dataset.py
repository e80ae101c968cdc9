import logging
from functools import partial
from typing import Iterator, List, Optional, Sequence

from linmba.expr import Expr, render
from linmba.generate.__generate import GeneratorSpec, encode_affine, obfuscate
from linmba.simplify import simplify
from linmba.tables import TableRegistry
from linmba.tools.dataset import HEADER, DatasetRecord, write_dataset
from linmba.tools.pool import map_in_pool

def encoded_target(spec: GeneratorSpec) -> Expr:
    if spec.encode is None:
        return spec.target
    return encode_affine(spec.target, spec.encode[0], spec.encode[1], spec.width)

def ground_truth(spec: GeneratorSpec, registry: Optional[TableRegistry] = None) -> str:
    """The canonical spelling of the (encoded) target: what simplifying any of its obfuscations yields."""
    return render(simplify(encoded_target(spec), spec.width, registry=registry))

def _obfuscated_text(registry: Optional[TableRegistry], spec: GeneratorSpec) -> str:
    return render(obfuscate(spec, registry))

def generate_records(specs: Sequence[GeneratorSpec], registry: Optional[TableRegistry] = None,
                     workers: Optional[int] = 1, table_cache_dir: Optional[str] = None) -> Iterator[DatasetRecord]:
    """One record per spec, in order. Each spec carries its own seed, so the output does not depend on workers."""
    if workers == 1:
        texts: Sequence[str] = [_obfuscated_text(registry, spec) for spec in specs]
    else:
        texts = map_in_pool(partial(_obfuscated_text, None), specs, workers, table_cache_dir)
    truths = {}
    for i, (spec, text) in enumerate(zip(specs, texts)):
        key = (render(spec.target), spec.width, spec.encode)
        if key not in truths:
            truths[key] = ground_truth(spec, registry)
        yield DatasetRecord(text, truths[key], i + 1)

def dataset_comments(specs: Sequence[GeneratorSpec]) -> List[str]:
    comments = [HEADER]
    if specs:
        comments.append("width %i" % specs[0].width.bits)
    return comments

def emit_dataset(specs: Sequence[GeneratorSpec], path: str, registry: Optional[TableRegistry] = None,
                 workers: Optional[int] = 1, table_cache_dir: Optional[str] = None) -> int:
    """Write one obfuscated,ground-truth record per spec. Returns the number of records."""
    records = generate_records(specs, registry, workers, table_cache_dir)
    count = write_dataset(records, path, dataset_comments(specs))
    logging.info("Wrote %i records to %s." % (count, path))
    return count
