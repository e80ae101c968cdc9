import importlib
import json
import os

from linmba.tables import (
    CACHE_ENV_VAR, TABLE_VERSION, TableRegistry, build_lookup_table, configure_default_registry, default_registry,
    deserialize, serialize
)

registry_module = importlib.import_module("linmba.tables.__registry")

def test_serialize_round_trip():
    table = build_lookup_table(2)
    assert deserialize(serialize(table)) == table

def test_serialization_is_stable():
    assert serialize(build_lookup_table(1)) == serialize(build_lookup_table(1))

def test_deserialize_rejects_garbage():
    assert deserialize("not json") is None
    assert deserialize("[1, 2]") is None
    assert deserialize(json.dumps({"format": "something else"})) is None

def test_deserialize_rejects_other_versions():
    document = json.loads(serialize(build_lookup_table(1)))
    document["version"] = TABLE_VERSION + 1
    assert deserialize(json.dumps(document)) is None

def test_registry_returns_same_instance():
    registry = TableRegistry()
    assert registry.table(1) is registry.table(1)
    assert registry.cache_path(1) is None

def test_registry_writes_and_reads_cache(tmpdir):
    cache_dir = os.path.join(str(tmpdir), "tables")
    first = TableRegistry(cache_dir)
    table = first.table(2)
    path = first.cache_path(2)
    assert os.path.exists(path)

    second = TableRegistry(cache_dir)
    assert second.table(2) == table

def test_registry_ignores_corrupt_cache(tmpdir):
    registry = TableRegistry(str(tmpdir))
    with open(registry.cache_path(1), "w") as fh:
        fh.write("{broken")
    assert registry.table(1) == build_lookup_table(1)
    with open(registry.cache_path(1), "r") as fh:
        assert deserialize(fh.read()) == build_lookup_table(1)

def test_invalidate_cache_rebuilds():
    registry = TableRegistry()
    first = registry.table(1)
    registry.invalidate_cache()
    second = registry.table(1)
    assert first is not second
    assert first == second

def test_default_registry_reads_environment(monkeypatch, tmpdir):
    monkeypatch.setattr(registry_module, "_default", None)
    monkeypatch.setenv(CACHE_ENV_VAR, str(tmpdir))
    assert default_registry().cache_dir == str(tmpdir)
    assert default_registry() is default_registry()

def test_configure_default_registry(monkeypatch, tmpdir):
    monkeypatch.setattr(registry_module, "_default", None)
    registry = configure_default_registry(str(tmpdir))
    assert configure_default_registry(str(tmpdir)) is registry
    assert configure_default_registry(None) is not registry
