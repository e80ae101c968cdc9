from linmba.tables.__lookup import (
    SUPPORTED_COUNTS, LookupTable, build_lookup_table, cost, lookup, lookup_for, placeholder, placeholders,
    truth_index
)
from linmba.tables.__registry import (
    CACHE_ENV_VAR, TABLE_VERSION, TableRegistry, configure_default_registry, default_registry, deserialize, serialize
)
