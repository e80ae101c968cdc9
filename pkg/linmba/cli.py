import json
import logging
import random
import sys
from typing import Any, Dict, NoReturn, Optional, Tuple

import click

from linmba.config import Settings
from linmba.expr import Expr, Var, Width, parse, render
from linmba.linearity import normalize
from linmba.generate import GeneratorSpec, dataset_comments, generate_records, random_affine
from linmba.simplify import analyze
from linmba.tables import SUPPORTED_COUNTS, configure_default_registry
from linmba.tools import treeview
from linmba.tools.dataset import iter_dataset, read_dataset, write_records
from linmba.tools.report import RecordOptions, bench as run_bench, run_dataset
from linmba.util.exceptions import DatasetFormatError, NotLinearError
from linmba.verify import (
    EquivalenceVerdict, equivalent_exhaustive, equivalent_linear, equivalent_sampled
)

LOG_FORMAT = '%(asctime)s : %(levelname)s : %(message)s'
MODES = ("linear", "exhaustive", "sample")

def _settings() -> Settings:
    return click.get_current_context().find_root().obj

def _width(bits: Optional[int]) -> Width:
    return Width(_settings().override(bits=bits).bits)

def _fail(message: str) -> NoReturn:
    click.echo(message, err=True)
    raise click.exceptions.Exit(1)

def _parse_option(text: str, width: Width) -> Expr:
    try:
        return parse(text, width)
    except ValueError as e:
        raise click.UsageError(str(e))

def _parse_argument(text: str, width: Width) -> Expr:
    try:
        return parse(text, width)
    except ValueError as e:
        _fail(str(e))

@click.group()
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help="YAML file with default settings.")
@click.option('-v', '--verbose', count=True, help="Log more; repeat for debug output.")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], verbose: int) -> None:
    """Simplify and generate linear mixed Boolean-arithmetic expressions."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(format=LOG_FORMAT, level=level)
    try:
        settings = Settings.load(config_path)
    except ValueError as e:
        raise click.UsageError(str(e))
    configure_default_registry(settings.table_cache_dir)
    ctx.obj = settings

def _simplify_one(text: str, width: Width, check: bool, allow_nonlinear: bool, as_json: bool) -> None:
    settings = _settings()
    try:
        e = parse(text, width)
        result = analyze(e, width, allow_nonlinear, settings.max_variables)
    except NotLinearError as err:
        _fail("%s (path %s)" % (err, err.report.path))
    except ValueError as err:
        _fail(str(err))

    verdict: Optional[EquivalenceVerdict] = None
    if check and result.linear_checked:
        verdict = equivalent_linear(e, result.expr, width, settings.max_variables)
    if not result.linear_checked:
        click.echo("Warning: input is not linear; result verified on 0/1 points only.", err=True)

    output = render(result.expr)
    if as_json:
        document: Dict[str, Any] = {
            "input": text,
            "output": output,
            "bits": width.bits,
            "variables": list(result.basis.vars),
            "signature": list(result.signature.values),
            "basis": render(result.basis.to_expr()),
            "refinement_case": result.refinement_case,
            "linear_checked": result.linear_checked,
            "check": verdict.kind.value if verdict is not None else None
        }
        click.echo(json.dumps(document, indent=2))
    else:
        click.echo(output)
        if verdict is not None:
            click.echo("# %s" % verdict.describe())
    if verdict is not None and not verdict.equivalent:
        click.get_current_context().exit(1)

@cli.command(name="simplify")
@click.argument('expression', required=False)
@click.option('--dataset', 'dataset_path', type=click.Path(exists=True, dir_okay=False), default=None)
@click.option('--bits', type=click.IntRange(1, 64), default=None)
@click.option('--check', is_flag=True, help="Prove each result equivalent to its input.")
@click.option('--allow-nonlinear', is_flag=True, help="Simplify inputs that fail the linearity check anyway.")
@click.option('--json', 'as_json', is_flag=True)
@click.option('--workers', type=click.IntRange(1, None), default=None)
def cmd_simplify(expression: Optional[str], dataset_path: Optional[str], bits: Optional[int], check: bool,
                 allow_nonlinear: bool, as_json: bool, workers: Optional[int]) -> None:
    """Simplify an expression, or every record of a dataset."""
    if (expression is None) == (dataset_path is None):
        raise click.UsageError("Give exactly one of EXPRESSION or --dataset.")
    width = _width(bits)
    if expression is not None:
        _simplify_one(expression, width, check, allow_nonlinear, as_json)
        return

    assert dataset_path is not None
    settings = _settings()
    try:
        records = read_dataset(dataset_path)
    except DatasetFormatError as e:
        _fail(str(e))
    options = RecordOptions(width.bits, check, allow_nonlinear, settings.max_variables)
    report = run_dataset(records, options, workers or settings.workers, settings.table_cache_dir)
    if as_json:
        click.echo(json.dumps(report.as_dict(), indent=2))
    else:
        for outcome in report.outcomes:
            if outcome.output is not None:
                click.echo(outcome.output)
            else:
                click.echo("line %i: %s" % (outcome.line, outcome.error), err=True)
        click.echo(report.summary(), err=True)
    if not report.success:
        click.get_current_context().exit(1)

def _encoding(text: Optional[str], width: Width, seed: int) -> Optional[Tuple[int, int]]:
    if text is None:
        return None
    if text == "random":
        return random_affine(random.Random(seed), width)
    try:
        a, b = (int(part.strip(), 0) for part in text.split(","))
    except ValueError:
        raise click.UsageError('--encode-affine expects "a,b" or "random", got "%s"' % text)
    return width.reduce(a), width.reduce(b)

@cli.command(name="generate")
@click.option('--target', required=True, help="Linear MBA the outputs must be equivalent to.")
@click.option('--terms', type=int, default=4, show_default=True)
@click.option('--count', type=click.IntRange(0, None), default=1, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--bits', type=click.IntRange(1, 64), default=None)
@click.option('--encode-affine', 'encode_text', default=None, help='"a,b" with odd a, or "random".')
@click.option('--vars', 'extra_vars', default=None, help="Comma-separated extra variable names.")
@click.option('--out', type=click.Path(dir_okay=False, writable=True), default=None)
@click.option('--workers', type=click.IntRange(1, None), default=1, show_default=True)
def cmd_generate(target: str, terms: int, count: int, seed: int, bits: Optional[int], encode_text: Optional[str],
                 extra_vars: Optional[str], out: Optional[str], workers: int) -> None:
    """Generate obfuscated equivalents of a target; record i uses seed + i."""
    width = _width(bits)
    target_expr = _parse_option(target, width)
    report = normalize(target_expr, width)
    if not report.is_linear:
        raise click.UsageError(str(NotLinearError(report)))
    encode = _encoding(encode_text, width, seed)
    names: Tuple[str, ...] = tuple(n.strip() for n in extra_vars.split(",") if n.strip()) if extra_vars else ()
    specs = [GeneratorSpec(target_expr, terms, width, seed + i, encode, names) for i in range(count)]
    try:
        for name in names:
            Var(name)
        GeneratorSpec(target_expr, terms, width, seed, encode, names).validate()
        records = list(generate_records(specs, workers=workers, table_cache_dir=_settings().table_cache_dir))
    except ValueError as e:
        raise click.UsageError(str(e))

    if out is None:
        write_records(records, sys.stdout, dataset_comments(specs))
    else:
        with open(out, "w", encoding="utf-8") as fh:
            write_records(records, fh, dataset_comments(specs))
    click.echo("Generated %i record(s) for %s." % (len(records), render(target_expr)), err=True)

def _verdict(mode: str, e1: Expr, e2: Expr, width: Width, samples: int, seed: int) -> EquivalenceVerdict:
    settings = _settings()
    if mode == "linear":
        return equivalent_linear(e1, e2, width, settings.max_variables)
    if mode == "exhaustive":
        return equivalent_exhaustive(e1, e2, width, settings.exhaustive_budget)
    return equivalent_sampled(e1, e2, width, samples, seed, settings.max_variables)

@cli.command(name="verify")
@click.argument('expressions', nargs=-1)
@click.option('--dataset', 'dataset_path', type=click.Path(exists=True, dir_okay=False), default=None)
@click.option('--bits', type=click.IntRange(1, 64), default=None)
@click.option('--mode', type=click.Choice(MODES), default="linear", show_default=True)
@click.option('--samples', type=click.IntRange(1, None), default=None)
@click.option('--seed', type=int, default=0, show_default=True)
def cmd_verify(expressions: Tuple[str, ...], dataset_path: Optional[str], bits: Optional[int], mode: str,
               samples: Optional[int], seed: int) -> None:
    """Check two expressions, or every record of a dataset, for equivalence."""
    if dataset_path is None and len(expressions) != 2:
        raise click.UsageError("Give two expressions or --dataset.")
    if dataset_path is not None and expressions:
        raise click.UsageError("Give two expressions or --dataset, not both.")
    width = _width(bits)
    n_samples = samples if samples is not None else _settings().samples

    if dataset_path is None:
        e1, e2 = (_parse_argument(text, width) for text in expressions)
        try:
            verdict = _verdict(mode, e1, e2, width, n_samples, seed)
        except ValueError as e:
            _fail(str(e))
        click.echo(verdict.describe())
        if not verdict.equivalent:
            click.get_current_context().exit(1)
        return

    failures = 0
    total = 0
    with open(dataset_path, "r", encoding="utf-8") as fh:
        try:
            for record in iter_dataset(fh):
                total += 1
                try:
                    verdict = _verdict(mode, parse(record.complex, width), parse(record.simple, width), width,
                                       n_samples, seed)
                except ValueError as e:
                    failures += 1
                    click.echo("line %i: %s" % (record.line, e))
                    continue
                if not verdict.equivalent:
                    failures += 1
                    click.echo("line %i: %s" % (record.line, verdict.describe()))
        except DatasetFormatError as e:
            _fail(str(e))
    click.echo("%i of %i records equivalent." % (total - failures, total))
    if failures:
        click.get_current_context().exit(1)

@cli.command(name="bench")
@click.option('--dataset', 'dataset_path', type=click.Path(exists=True, dir_okay=False), required=True)
@click.option('--bits', type=click.IntRange(1, 64), default=None)
@click.option('--repeat', type=click.IntRange(1, None), default=1, show_default=True)
@click.option('--json', 'as_json', is_flag=True)
def cmd_bench(dataset_path: str, bits: Optional[int], repeat: int, as_json: bool) -> None:
    """Time the simplifier on a dataset, in a single process."""
    width = _width(bits)
    try:
        records = read_dataset(dataset_path)
    except DatasetFormatError as e:
        _fail(str(e))
    report = run_bench(records, RecordOptions(width.bits, max_variables=_settings().max_variables), repeat)
    if as_json:
        click.echo(json.dumps(report.as_dict(), indent=2))
    else:
        click.echo(report.summary())
    if not report.success:
        click.get_current_context().exit(1)

@cli.command(name="tree")
@click.argument('expression')
@click.option('--bits', type=click.IntRange(1, 64), default=None)
def cmd_tree(expression: str, bits: Optional[int]) -> None:
    """Output an ASCII tree representation of an expression."""
    click.echo(treeview.as_ascii(_parse_argument(expression, _width(bits))))

@cli.command(name="tables")
@click.option('--max-t', type=click.IntRange(1, max(SUPPORTED_COUNTS)), default=max(SUPPORTED_COUNTS),
              show_default=True)
@click.option('--cache-dir', type=click.Path(file_okay=False), default=None,
              help="Where to write the tables; defaults to the configured cache directory.")
def cmd_tables(max_t: int, cache_dir: Optional[str]) -> None:
    """Build the lookup tables, writing them to the cache directory if there is one."""
    registry = configure_default_registry(cache_dir or _settings().table_cache_dir)
    for t in range(1, max_t + 1):
        table = registry.table(t)
        location = registry.cache_path(t) or "not cached"
        click.echo("t=%i: %i entries (%s)" % (t, len(table.entries), location))
