import json
import threading

from colmez.cache import ENV_VAR, FILENAME, LValueCache, default_cache_dir
from colmez.characters import kronecker_character
from colmez.lfunctions import l_value_record


def test_roundtrip_is_bit_exact(tmp_path):
    chi = kronecker_character(-20)
    cache = LValueCache(tmp_path)
    cold = l_value_record(chi, cache)
    assert cache.misses == 1 and len(cache) == 1
    warm = l_value_record(chi, LValueCache(tmp_path))
    assert warm == cold
    assert warm.z == l_value_record(chi).z


def test_version_filter_and_torn_lines(tmp_path):
    cache = LValueCache(tmp_path)
    cache.put((5, 1, "L0", "double"), (0.5 + 0j, 0.25 + 0j, 1e-16))
    with (tmp_path / FILENAME).open("a") as fh:
        fh.write('{"key": [7, 1, "L0", "double"], "version": "old", "value": [1, 0, 1, 0, 0]}\n')
        fh.write('{"key": [9, 1')
    reloaded = LValueCache(tmp_path)
    assert len(reloaded) == 1
    assert reloaded.get((7, 1, "L0", "double")) is None
    assert reloaded.get((5, 1, "L0", "double")) == (0.5 + 0j, 0.25 + 0j, 1e-16)


def test_compact(tmp_path):
    cache = LValueCache(tmp_path)
    key = (5, 1, "L0", "double")
    cache.put(key, (1 + 0j, 2 + 0j, 0.0))
    cache.put(key, (1 + 0j, 3 + 0j, 0.0))
    cache.put(key, (1 + 0j, 3 + 0j, 0.0))  # unchanged value: no new line
    lines = (tmp_path / FILENAME).read_text().splitlines()
    assert len(lines) == 2
    cache.compact()
    lines = (tmp_path / FILENAME).read_text().splitlines()
    assert len(lines) == 1 and json.loads(lines[0])["value"][2] == 3
    assert LValueCache(tmp_path).get(key) == (1 + 0j, 3 + 0j, 0.0)


def test_concurrent_writers(tmp_path):
    cache = LValueCache(tmp_path)

    def work(i):
        for j in range(50):
            cache.put((i, j, "L0", "double"), (complex(i), complex(j), 0.0))

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(LValueCache(tmp_path)) == 400


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert default_cache_dir() == tmp_path
    assert LValueCache().path == tmp_path / FILENAME
