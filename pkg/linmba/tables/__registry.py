import json
import logging
import os
from functools import partial
from typing import Dict, Optional

from cachetools import cachedmethod
from cachetools.keys import hashkey

from linmba.expr import Width, parse, render
from linmba.tables.__lookup import LookupTable, build_lookup_table

CACHE_ENV_VAR = "LINMBA_TABLE_CACHE"
CACHE_FORMAT = "linmba-lookup-table"

# Bump whenever the cost order or the enumeration changes; stale cache files are then rebuilt.
TABLE_VERSION = 2

def serialize(table: LookupTable) -> str:
    """Text form of a table. Identical tables always serialize to identical strings."""
    document = {
        "format": CACHE_FORMAT,
        "version": TABLE_VERSION,
        "t": table.t,
        "entries": [render(e) for e in table.entries]
    }
    return json.dumps(document, indent=1)

def deserialize(text: str) -> Optional[LookupTable]:
    """Parse a serialized table. Returns None if the text is not a table of the current version."""
    try:
        document = json.loads(text)
    except ValueError:
        return None
    if not isinstance(document, dict) or document.get("format") != CACHE_FORMAT:
        return None
    if document.get("version") != TABLE_VERSION:
        logging.info("Discarding lookup table cache of version %s (current is %i)." %
                     (document.get("version"), TABLE_VERSION))
        return None
    width = Width(8)
    try:
        return LookupTable(document["t"], tuple(parse(entry, width) for entry in document["entries"]))
    except (KeyError, TypeError, ValueError):
        return None

class TableRegistry:
    """Builds lookup tables on first use and hands out the same instance afterwards. With a cache directory, tables
    are also read from and written to disk, one JSON file per variable count."""

    def __init__(self, cache_dir: Optional[str] = None):
        self.cache_dir = cache_dir
        self._cache: Dict = {}

    def cache_path(self, t: int) -> Optional[str]:
        if self.cache_dir is None:
            return None
        return os.path.join(self.cache_dir, "lookup_t%i.json" % t)

    def _read(self, t: int) -> Optional[LookupTable]:
        path = self.cache_path(t)
        if path is None or not os.path.exists(path):
            return None
        with open(path, "r") as fh:
            table = deserialize(fh.read())
        if table is None or table.t != t:
            logging.warning("Ignoring unusable lookup table cache %s." % path)
            return None
        logging.debug("Loaded lookup table for %i variables from %s." % (t, path))
        return table

    def _write(self, table: LookupTable) -> None:
        path = self.cache_path(table.t)
        if path is None:
            return
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as fh:
            fh.write(serialize(table))
        logging.info("Wrote lookup table for %i variables to %s." % (table.t, path))

    @cachedmethod(lambda self: self._cache, key=partial(hashkey, 'table'))
    def table(self, t: int) -> LookupTable:
        table = self._read(t)
        if table is None:
            table = build_lookup_table(t)
            self._write(table)
        return table

    def invalidate_cache(self) -> None:
        self._cache.clear()

_default: Optional[TableRegistry] = None

def default_registry() -> TableRegistry:
    """Process-wide registry. The cache directory comes from the LINMBA_TABLE_CACHE environment variable, if set."""
    global _default
    if _default is None:
        _default = TableRegistry(os.environ.get(CACHE_ENV_VAR) or None)
    return _default

def configure_default_registry(cache_dir: Optional[str]) -> TableRegistry:
    """Point the process-wide registry at a cache directory. Tables already built are kept if the directory is
    unchanged."""
    global _default
    if _default is None or _default.cache_dir != cache_dir:
        _default = TableRegistry(cache_dir)
    return _default
