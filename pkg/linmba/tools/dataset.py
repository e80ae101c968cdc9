import csv
from typing import Iterable, Iterator, List, NamedTuple, Optional, TextIO

from linmba.util.exceptions import DatasetFormatError

HEADER = "complex,simple"

class DatasetRecord(NamedTuple):
    """One line of a dataset: an obfuscated expression and its known simple form, as text."""
    complex: str
    simple: str
    line: int = 0

def _is_record(text: str) -> bool:
    stripped = text.strip()
    return stripped != "" and not stripped.startswith("#")

def iter_dataset(fh: TextIO) -> Iterator[DatasetRecord]:
    """Records of a dataset file. Blank lines and lines starting with '#' are skipped."""
    for line_num, text in enumerate(fh, start=1):
        if not _is_record(text):
            continue
        fields = next(csv.reader([text.strip()]))
        if len(fields) != 2:
            raise DatasetFormatError(line_num, "expected 2 comma-separated fields, found %i" % len(fields))
        complex_, simple = (f.strip() for f in fields)
        if not complex_ or not simple:
            raise DatasetFormatError(line_num, "empty expression")
        yield DatasetRecord(complex_, simple, line_num)

def read_dataset(path: str) -> List[DatasetRecord]:
    with open(path, "r", encoding="utf-8") as fh:
        return list(iter_dataset(fh))

def write_records(records: Iterable[DatasetRecord], fh: TextIO, comments: Optional[List[str]] = None) -> int:
    """Write comment lines, then one record per line. Returns the number of records written."""
    for comment in comments or []:
        fh.write("# %s\n" % comment)
    writer = csv.writer(fh, lineterminator="\n")
    count = 0
    for record in records:
        writer.writerow([record.complex, record.simple])
        count += 1
    return count

def write_dataset(records: Iterable[DatasetRecord], path: str, comments: Optional[List[str]] = None) -> int:
    with open(path, "w", encoding="utf-8") as fh:
        return write_records(records, fh, comments if comments is not None else [HEADER])
