import random

import pytest

from tightdesigns import search as S


def keys(hits):
    return sorted(h.key() for h in hits)


def test_witt_complement_hit_with_relaxed_s():
    # the in-window Witt triple is the complement design: x = 14, y = 20
    # (the two-alpha filter at s = 2 admits other non-design triples, so
    # assert membership, not uniqueness)
    ch = S.search_chunk(S.SearchChunk(1, 40, 2, 2), i_max=2)
    assert (2, 14, 20) in [h.key() for h in ch.hits]
    hit = next(h for h in ch.hits if h.key() == (2, 14, 20))
    assert hit.alphas == (21, 120)
    assert hit.root_check == "integral-roots:10,12"
    assert ch.status == "done"


def test_empty_window_when_x_too_small():
    # y-window [x+s+2, 2x+1] is empty for x <= s+1
    ch = S.search_chunk(S.SearchChunk(1, 11, 10, 287))
    assert ch.hits == []


def test_oracle_equivalence_random_windows():
    rng = random.Random(101)
    for _ in range(5):
        s = rng.choice([10, 13, 47, 150, 287])
        x0 = rng.randint(1, 2500)
        x1 = x0 + 150
        ck = S.search_chunk(S.SearchChunk(x0, x1, s, s))
        assert keys(ck.hits) == keys(S.verify_window(s, x0, x1)), (s, x0)


def test_kernel_vs_reference_path():
    ck = S.search_chunk(S.SearchChunk(200, 420, 10, 60))
    ref = S._reference_hits(S.SearchChunk(200, 420, 10, 60), 6)
    assert keys(ck.hits) == keys(ref)


def test_kernel_vs_reference_high_x():
    # candidate generation must agree far from the small-x regime too
    chunk = S.SearchChunk(1_000_000, 1_000_120, 10, 287)
    ck = S.search_chunk(chunk)
    ref = S._reference_hits(chunk, 6)
    assert keys(ck.hits) == keys(ref)


def test_chunk_partition_independence():
    # same hit set regardless of chunk sizes (relaxed s so hits exist)
    runs = []
    for chunk_size in (64, 1000):
        res = S.run_search(
            x_lo=1, x_hi=1000, s_lo=2, s_hi=9,
            chunk_size=chunk_size, workers=1, i_max=2,
        )
        runs.append(keys(res.hits))
    assert runs[0] == runs[1]
    assert len(runs[0]) > 0


def test_enumerate_candidate_y():
    assert S.enumerate_candidate_y(10, 100) == [125, 200]
    assert S.enumerate_candidate_y(10, 6) == []
    # every window divisor of s*x*(x+1), nothing else
    rng = random.Random(3)
    for _ in range(40):
        s = rng.randint(2, 287)
        x = rng.randint(1, 4000)
        got = S.enumerate_candidate_y(s, x)
        want = [y for y in range(x + s + 2, 2 * x + 2) if (s * x * (x + 1)) % y == 0]
        assert got == want, (s, x)


def test_candidate_y_alpha1_soundness():
    rng = random.Random(4)
    from tightdesigns.design_functions import alpha_xy
    for _ in range(20):
        s = rng.randint(10, 287)
        x = rng.randint(500, 3000)
        ys = set(S.enumerate_candidate_y(s, x))
        for y in range(x + s + 2, 2 * x + 2):
            assert (alpha_xy(s, x, y, 1).denominator == 1) == (y in ys)


def test_i_max_validation():
    with pytest.raises(ValueError):
        S.search_chunk(S.SearchChunk(1, 10, 10, 287), i_max=7)
    with pytest.raises(ValueError):
        S.search_chunk(S.SearchChunk(1, 10, 4, 9), i_max=5)
    with pytest.raises(ValueError):
        S.search_chunk(S.SearchChunk(0, 10, 10, 287))


def test_checkpoint_roundtrip(tmp_path):
    path = str(tmp_path / "ck.txt")
    ch = S.search_chunk(S.SearchChunk(1, 15, 2, 2), i_max=2)
    S.append_checkpoint(path, ch)
    loaded = S.load_checkpoint(path)
    assert len(loaded) == 1
    assert loaded[0].x_lo == 1 and loaded[0].x_hi == 15
    assert loaded[0].status == "done"
    assert [(h.s, h.x, h.y, h.alphas) for h in loaded[0].hits] == [(2, 14, 20, (21, 120))]


def test_checkpoint_format_is_plain_ascii(tmp_path):
    path = str(tmp_path / "ck.txt")
    ch = S.search_chunk(S.SearchChunk(1, 15, 2, 2), i_max=2)
    S.append_checkpoint(path, ch)
    lines = open(path, encoding="ascii").read().splitlines()
    assert lines[0] == "1 15 2 2 done 1"
    assert lines[1] == "HIT 2 14 20 21 120"


def test_resume_skips_done_chunks(tmp_path):
    path = str(tmp_path / "ck.txt")
    res1 = S.run_search(x_lo=1, x_hi=400, s_lo=10, s_hi=30,
                        chunk_size=100, workers=1, checkpoint=path)
    assert res1.x_covered == 400
    n_records = len(S.load_checkpoint(path))
    assert n_records == 4
    # resuming re-runs nothing: no new records are appended
    res2 = S.run_search(x_lo=1, x_hi=400, s_lo=10, s_hi=30,
                        chunk_size=100, workers=1, checkpoint=path, resume=True)
    assert len(S.load_checkpoint(path)) == n_records
    assert keys(res2.hits) == keys(res1.hits)
    assert res2.x_covered == 400


def test_parallel_matches_serial():
    serial = S.run_search(x_lo=1, x_hi=3000, s_lo=2, s_hi=9,
                          chunk_size=500, workers=1, i_max=2)
    parallel = S.run_search(x_lo=1, x_hi=3000, s_lo=2, s_hi=9,
                            chunk_size=500, workers=2, i_max=2)
    assert keys(serial.hits) == keys(parallel.hits)


def test_hit_invariants():
    from tightdesigns.design_functions import alpha_xy
    res = S.run_search(x_lo=1, x_hi=2000, s_lo=2, s_hi=9,
                       chunk_size=1000, workers=1, i_max=2)
    assert res.hits, "relaxed small-s search should produce hits"
    for h in res.hits:
        assert h.x + h.s + 2 <= h.y <= 2 * h.x + 1
        for i, a in enumerate(h.alphas, start=1):
            assert alpha_xy(h.s, h.x, h.y, i) == a
