import logging
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Set, Tuple

from linmba.expr import Binary, BinaryOp, Const, Expr, Unary, UnaryOp, Var, Width, bit_not, render, variables
from linmba.generate.__truth import TruthMatrix
from linmba.linearity import LinearForm, linearize, normalize, term_key
from linmba.semantics import signature_vector
from linmba.simplify import solve_basis
from linmba.tables import SUPPORTED_COUNTS, TableRegistry, default_registry, lookup_for
from linmba.util.exceptions import EvenMultiplierError, InvalidSpecError, NotLinearError

DEFAULT_NAMES = ("x", "y", "z", "w", "v", "u", "s", "r", "q", "p")

# Iterations of the growth loop before a request is declared unsatisfiable.
MAX_STEPS = 1000
MAX_ATTEMPTS = 16

_BITWISE = (BinaryOp.AND, BinaryOp.XOR, BinaryOp.OR)

@dataclass(frozen=True)
class GeneratorSpec:
    target: Expr
    terms: int
    width: Width
    seed: int
    encode: Optional[Tuple[int, int]] = None
    vars: Tuple[str, ...] = field(default_factory=tuple)

    def validate(self) -> None:
        if self.terms < 2:
            raise InvalidSpecError("at least 2 terms are required, got %i" % self.terms)
        if self.encode is not None and self.encode[0] % 2 == 0:
            raise EvenMultiplierError(self.encode[0])

    @property
    def names(self) -> List[str]:
        """Target variables followed by the extra ones; a constant target with no extras gets a single variable."""
        ret = variables(self.target)
        ret.extend(name for name in self.vars if name not in ret)
        if not ret:
            ret.append(DEFAULT_NAMES[0])
        return ret

def random_coefficient(rng: random.Random, width: Width) -> int:
    """A nonzero coefficient, odd half of the time. Some are small, some sit just below 2^n (small negatives), the
    rest are uniform over the word."""
    while True:
        style = rng.random()
        small = rng.randrange(1, (1 << min(width.bits, 12)) + 1)
        if style < 0.4:
            value = small
        elif style < 0.7:
            value = width.modulus - small
        else:
            value = rng.getrandbits(width.bits)
        value = width.reduce(value)
        if rng.random() < 0.5:
            value |= 1
        elif width.bits > 1:
            value &= width.mask ^ 1
        if value != 0:
            return value

def _label_sequence(rng: random.Random, names: Sequence[str], leaves: int) -> List[str]:
    """Leaf labels that use every name, first occurrences in the given order."""
    seq: List[str] = []
    seen = 0
    for slot in range(leaves):
        remaining = leaves - slot
        fresh_needed = len(names) - seen
        if seen < len(names) and (remaining == fresh_needed or seen == 0 or rng.random() < 0.5):
            seq.append(names[seen])
            seen += 1
        else:
            seq.append(names[rng.randrange(seen)])
    return seq

def _tree(rng: random.Random, labels: Sequence[str]) -> Expr:
    if len(labels) == 1:
        ret: Expr = Var(labels[0])
    else:
        split = rng.randrange(1, len(labels))
        ret = Binary(rng.choice(_BITWISE), _tree(rng, labels[:split]), _tree(rng, labels[split:]))
    if rng.random() < 0.25:
        ret = Unary(UnaryOp.BIT_NOT, ret)
    return ret

def random_bitwise(rng: random.Random, names: Sequence[str], leaves: Optional[int] = None) -> Expr:
    """A random tree over ~, &, ^ and | whose leaves draw from names."""
    if leaves is None:
        leaves = rng.randrange(1, 2 * len(names) + 1)
    return _tree(rng, [rng.choice(names) for _ in range(leaves)])

def anchor_expression(rng: random.Random, names: Sequence[str]) -> Expr:
    """A random bitwise tree mentioning every name, first occurrences in the order of names."""
    leaves = len(names) + rng.randrange(0, len(names) + 1)
    return _tree(rng, _label_sequence(rng, names, leaves))

class _Builder:
    def __init__(self, rng: random.Random, names: Sequence[str], width: Width, registry: TableRegistry):
        self.rng = rng
        self.names = list(names)
        self.width = width
        self.registry = registry
        # Keys of terms that rewrites must leave alone
        self.protected: Set[str] = set()

    def pick_bitwise(self) -> Expr:
        """Either a table entry for a random truth vector over a few of the names, or a random tree."""
        rng = self.rng
        if rng.random() < 0.5:
            k = rng.randint(1, min(len(self.names), max(SUPPORTED_COUNTS)))
            chosen = rng.sample(self.names, k)
            truth = [rng.randrange(2) for _ in range(1 << k)]
            return lookup_for(self.registry.table(k), truth, chosen)
        return random_bitwise(rng, self.names)

    def basis_terms(self, bitwise: Expr) -> Optional[List[Tuple[int, Optional[Expr]]]]:
        names = variables(bitwise)
        combination = solve_basis(signature_vector(bitwise, names, self.width), names)
        terms = combination.ordered()
        if combination.term_count() <= 1:
            return None
        return terms

    def zero_component(self, form: LinearForm, bitwise: Optional[Expr] = None) -> bool:
        """Add c*r - c*(r over the conjunction basis), which is identically zero. Returns False when r is a bare
        conjunction or constant and so gives nothing."""
        r = bitwise if bitwise is not None else self.pick_bitwise()
        basis = self.basis_terms(r)
        if basis is None:
            return False
        c = random_coefficient(self.rng, self.width)
        exprs: List[Expr] = [r] + [term if term is not None else Const(1) for _, term in basis]
        coeffs = [c] + [-c * coeff for coeff, _ in basis]
        constant_free = [e for e in exprs if not isinstance(e, Const)]
        matrix = TruthMatrix.of_expressions(constant_free, self.names)
        column_coeffs = [coeff for e, coeff in zip(exprs, coeffs) if not isinstance(e, Const)]
        # The constant m is -m times ~0, whose truth column is all ones.
        constant = sum(coeff for e, coeff in zip(exprs, coeffs) if isinstance(e, Const))
        assert all(self.width.reduce(v - constant) == 0 for v in matrix.apply(column_coeffs, self.width))
        form.add(r, c)
        for coeff, term in basis:
            form.add(term, -c * coeff)
        return True

    def rewrite(self, form: LinearForm) -> bool:
        """Replace one term c*b by an equivalent group of terms."""
        terms = [(c, b) for c, b in form.terms() if term_key(b) not in self.protected]
        if not terms:
            return False
        c, b = self.rng.choice(terms)
        r = self.pick_bitwise()
        choice = self.rng.randrange(4)
        replacement: List[Tuple[int, Optional[Expr]]]
        if choice == 0:
            # b = -~b - 1
            replacement = [(-c, bit_not(b)), (-c, None)]
        elif choice == 1:
            # b = (b|r) + (b&r) - r
            replacement = [(c, Binary(BinaryOp.OR, b, r)), (c, Binary(BinaryOp.AND, b, r)), (-c, r)]
        elif choice == 2:
            # b = (b^r) + 2(b&r) - r
            replacement = [(c, Binary(BinaryOp.XOR, b, r)), (2 * c, Binary(BinaryOp.AND, b, r)), (-c, r)]
        else:
            expanded = self.basis_terms(b)
            if expanded is None:
                return False
            replacement = [(c * coeff, term) for coeff, term in expanded]
        form.remove(b)
        for coeff, term in replacement:
            form.add(term, coeff)
        return True

    def grow(self, form: LinearForm, terms: int) -> None:
        for _ in range(MAX_STEPS):
            if form.term_count() >= terms:
                return
            if self.rng.random() < 0.5:
                self.zero_component(form)
            else:
                self.rewrite(form)
        raise InvalidSpecError("could not reach %i terms" % terms)

def _arrange(rng: random.Random, form: LinearForm, anchor: Expr) -> LinearForm:
    """Anchor term first, the others shuffled."""
    key = term_key(anchor)
    entries = list(form.terms())
    head = [entry for entry in entries if term_key(entry[1]) == key]
    tail = [entry for entry in entries if term_key(entry[1]) != key]
    rng.shuffle(tail)
    ret = LinearForm(form.width)
    ret.add(None, form.constant)
    for coeff, bitwise in head + tail:
        ret.add(bitwise, coeff)
    return ret

def _target_form(target: Expr, width: Width) -> LinearForm:
    report = normalize(target, width)
    if not report.is_linear:
        raise NotLinearError(report)
    return linearize(target, width)

def zero_mba(t: int, terms: int, seed: int, width: Width, registry: Optional[TableRegistry] = None) -> Expr:
    """A linear MBA over t variables that is identically zero, with at least the requested number of terms."""
    if terms < 2:
        raise InvalidSpecError("at least 2 terms are required, got %i" % terms)
    if not 1 <= t <= len(DEFAULT_NAMES):
        raise InvalidSpecError("variable count must be between 1 and %i" % len(DEFAULT_NAMES))
    rng = random.Random(seed)
    builder = _Builder(rng, DEFAULT_NAMES[:t], width, registry or default_registry())
    form = LinearForm(width)
    builder.grow(form, terms)
    return form.to_expr()

def _obfuscate_once(spec: GeneratorSpec, rng: random.Random, registry: TableRegistry) -> Expr:
    width = spec.width
    names = spec.names
    builder = _Builder(rng, names, width, registry)
    form = LinearForm(width)

    for _ in range(MAX_STEPS):
        anchor = anchor_expression(rng, names)
        if builder.zero_component(form, anchor):
            break
    else:
        raise InvalidSpecError("no usable bitwise expression over %s" % ", ".join(names))
    builder.protected.add(term_key(anchor))

    target = _target_form(spec.target, width)
    form.extend(target)
    # Rewrite each original target term at least once so none survives verbatim.
    for _, bitwise in list(target.terms()):
        if form.coefficient(bitwise) != 0 and term_key(bitwise) not in builder.protected:
            coeff = form.coefficient(bitwise)
            form.remove(bitwise)
            single = LinearForm.of_term(width, bitwise, coeff)
            builder.rewrite(single)
            form.extend(single)

    builder.grow(form, spec.terms)
    return _arrange(rng, form, anchor).to_expr()

def obfuscate(spec: GeneratorSpec, registry: Optional[TableRegistry] = None) -> Expr:
    """A linear MBA equivalent to spec.target, at least spec.terms terms long, optionally encoded as a*e + b."""
    spec.validate()
    _target_form(spec.target, spec.width)
    if registry is None:
        registry = default_registry()
    names = spec.names
    rng = random.Random(spec.seed)
    for attempt in range(MAX_ATTEMPTS):
        ret = _obfuscate_once(spec, rng, registry)
        if spec.encode is not None:
            ret = encode_affine(ret, spec.encode[0], spec.encode[1], spec.width)
        if render(ret) == render(spec.target) or variables(ret) != names:
            logging.debug("Generator attempt %i for seed %i rejected." % (attempt, spec.seed))
            continue
        return ret
    raise InvalidSpecError("no obfuscation found for %s in %i attempts" % (render(spec.target), MAX_ATTEMPTS))

def encode_affine(e: Expr, a: int, b: int, width: Width) -> Expr:
    """Normalized form of a*e + b. The multiplier has to be odd so that the encoding can be undone."""
    if a % 2 == 0:
        raise EvenMultiplierError(a)
    encoded = Binary(BinaryOp.ADD, Binary(BinaryOp.MUL, Const(width.reduce(a)), e), Const(width.reduce(b)))
    report = normalize(encoded, width)
    if not report.is_linear:
        raise NotLinearError(report)
    assert report.normalized is not None
    return report.normalized

def random_affine(rng: random.Random, width: Width) -> Tuple[int, int]:
    return rng.getrandbits(width.bits) | 1, rng.getrandbits(width.bits)
