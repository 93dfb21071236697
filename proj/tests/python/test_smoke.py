import compstruct as cs


def test_pairing_round_trip():
    for a in range(20):
        for b in range(20):
            assert cs.decode_pair(cs.encode_pair(a, b)) == (a, b)
    assert cs.encode_pair(1, 2) == 8


def test_hypercube_automorphisms():
    autos = cs.automorphisms(3)
    assert len(autos) == 8
    assert sorted(tuple(x) for x, _ in autos) == sorted(
        [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    )
    for x, mapping in autos:
        for code, image in mapping.items():
            assert cs.h_apply(x, code) == image
    assert len(cs.automorphisms(2)) == 4


def test_composition_law():
    z = cs.face_code(1, 0)
    assert cs.h_apply([1], z) == cs.face_code(1, 1)
    assert cs.h_apply([0, 2], cs.h_apply([2], z)) == cs.h_apply(cs.h_compose([0, 2], [2]), z)
    assert cs.describe_element(cs.element_code([0, 1])) == "{0,1}"


def test_recovery_matches_the_permutation():
    codes = list(range(40))
    images = cs.recover("rot-7-3", codes)
    assert images == [cs.permute("rot-7-3", c) for c in codes]


def test_order_prefix_and_decoding():
    assert cs.order_prefix("evens", 11) == [0, 1, 2, 4, 3, 6, 8, 5, 10, 12, 7]
    result = cs.decode_set("primes", 25)
    assert result["members"] == [2, 3, 5, 7, 11, 13, 17, 19, 23]
    assert result["x_ops"] == {"member"}
    assert result["f_ops"] == {"inverse"}


def test_composites_and_verification():
    t = cs.composite_truncation("figure1", 3)
    assert len(t) == 12
    assert len(t.facts) == 25
    again = cs.FinitePresentation.from_text(t.to_text())
    assert again.elements == t.elements
    assert cs.isomorphism_count(t, again) >= 1
    assert cs.isomorphism_count(cs.hypercube_truncation(2), cs.hypercube_truncation(2)) == 4
    assert cs.hypercube_dot(3).startswith("digraph")


def test_spectra_and_categoricity():
    ok, lines = cs.spectra_demo(["evens", "squares", "primes"])
    assert ok
    assert len(lines.splitlines()) == 3
    assert cs.select_M(cs.element_code([])) == "A_0"
    assert cs.select_N(cs.element_code([])) == "B_0"
    assert cs.alpha(cs.face_code(2, 1)) == 3
    assert all(cs.eta_inverse(cs.eta(n)) == n for n in range(100))


def test_cli_and_errors():
    code, out, _ = cs.run_cli(["orders", "demo", "--set", "evens", "--n", "11"])
    assert code == cs.EXIT_OK
    assert "order prefix: 0 1 2 4 3 6 8 5 10 12 7" in out
    assert cs.run_cli(["bogus"])[0] == cs.EXIT_USAGE
    try:
        cs.recover("rot-7-3", [5], fuel_per_query=1)
    except cs.FuelExhausted:
        pass
    else:
        raise AssertionError("expected FuelExhausted")
