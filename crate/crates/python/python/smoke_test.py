"""Smoke test for the `uso` extension module.

Build and run:
    maturin develop -m crates/python/Cargo.toml   # or: pip install crates/python
    python crates/python/python/smoke_test.py
"""

import uso


def main():
    example = uso.Outmap(3, [7, 6, 5, 4, 3, 0, 1, 2])
    assert example.is_uso() and example.is_bijection()
    assert example.global_sink() == 5 and uso.mask_to_set(5) == "{1,3}"
    assert example.eval(0) == 7

    r = uso.orbit_period(example)
    assert r.orbit == [0, 7, 2, 5] and r.period == 4 and r.sink_candidate == 5
    assert uso.sink_via_period(example) == 5
    assert uso.power(example, 3, 0) == 5

    psi = uso.Outmap.psi(2)
    assert psi.table() == [3, 2, 0, 1]
    assert uso.naive_walk_count(uso.Outmap.psi(10)) == 1024
    assert uso.power(uso.Outmap.psi(16), 2**100, 0) == 0

    assert uso.Outmap.deserialize(psi.serialize()) == psi
    assert uso.Outmap.psi(1).serialize() == "uso-map v1\nn=1\n1 0\n"
    up = uso.Outmap.combine(uso.Outmap.psi(1), uso.Outmap.uniform(1, 0), "up")
    assert up == psi

    d = uso.qpf_distribution(4, 6)
    assert abs(sum(d) - 1.0) < 1e-12 and abs(d[16] - 0.25) < 1e-12
    assert 3 in uso.continued_fraction_candidates(11, 4, 8)

    res = uso.recover_period(example, t=6)
    assert res.recovered_period == 4
    rep = uso.quantum_find_sink(uso.Outmap.random(6, 3), seed=1)
    assert rep.sink == uso.Outmap.random(6, 3).global_sink()

    assert uso.solve_by_facet_decision(example) == (5, 3)
    assert uso.random_edge_walk(example, 0, 7)[0] == 5
    assert len(uso.enumerate_usos(2)) == 12

    try:
        uso.Outmap.deserialize("uso-map v1\nn=2\n0 1 2\n")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed map accepted")

    print("uso smoke test: ok")


if __name__ == "__main__":
    main()
