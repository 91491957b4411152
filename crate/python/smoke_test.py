"""Smoke test for the soficdyck extension module.

Build and install it first, for example:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/soficdyck-*.whl
"""

from fractions import Fraction

import soficdyck as sd


def main() -> None:
    assert "fig2" in sd.builtin_names()

    golden = sd.Automaton.builtin("golden-mean")
    z = golden.zeta(cap=8)
    assert z.coeffs() == [1, 1, 2, 3, 5, 8, 13, 21, 34], z
    # Lucas numbers
    assert z.periodic_counts() == [1, 3, 4, 7, 11, 18, 29, 47]

    fig2 = sd.Automaton.builtin("fig2")
    det = fig2.zeta(cap=8)
    sub = fig2.zeta(cap=8, method="substitution")
    brute = fig2.zeta(cap=8, method="bruteforce")
    assert det == sub == brute
    assert det.first_difference(sub) is None
    assert fig2.periodic_count(1) == 5
    assert len(fig2.periodic_patterns(2)) == fig2.periodic_count(2)

    multi = fig2.zeta_multivariate(cap=4)
    assert multi.theta() == fig2.zeta(cap=4)
    assert all(isinstance(e, dict) for e, _ in multi.terms())

    c11 = fig2.series_of("C", "1", "1", cap=8)
    assert c11.coeffs() == [0, 0, 2, 0, 6, 0, 30, 0, 186]
    assert fig2.series_of("CStarMc", "2", "2", cap=6).coeffs() == [0] * 7
    assert len(fig2.matrix("D", cap=4)) == len(fig2.states)

    for report in [
        fig2.check_determinism(),
        fig2.check_codeterminism(),
        fig2.check_circularity("CStarMc", max_total_length=6),
        fig2.check_decomposition(max_length=5),
        fig2.check_stack_equivalence(max_length=5),
    ]:
        assert report["passed"], report

    ambiguous = sd.Automaton.from_json(
        '{"alphabet":{"call":["a"],"return":["b"],"internal":[]},"states":["1","2"],'
        '"edges":[{"from":"1","label":"a","to":"1"},{"from":"1","label":"a","to":"2"},'
        '{"from":"1","label":"b","to":"1"}],"matched":[[0,2]]}'
    )
    report = ambiguous.check_determinism()
    assert not report["passed"] and report["witness"] == "a", report
    try:
        ambiguous.zeta(cap=4)
    except sd.PreconditionError as e:
        assert "left-reduced" in str(e)
    else:
        raise AssertionError("expected PreconditionError")

    s = sd.Series([1, -1])
    assert s.inverse().coeffs() == [1, 1]
    half = sd.Series([0, 1], cap=3).exp()
    assert half.coeff(2) == Fraction(1, 2)
    assert sd.Series.from_json(det.to_json()) == det
    assert sd.Automaton.from_json(fig2.to_json()).zeta(cap=6) == fig2.zeta(cap=6)

    print("ok")


if __name__ == "__main__":
    main()
