import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowkit.chow_core import (
    direct_sum,
    exterior_power,
    form_bundle,
    hom_bundle,
    line_bundle,
    tangent_twist,
    wedge2_bundle,
)
from chowkit.dsl import (
    Dual,
    Hom,
    Line,
    Omega,
    Power,
    Sum,
    Sym,
    TangentTwist,
    Twist,
    Wedge,
    elaborate,
    parse,
    unparse,
)
from chowkit.errors import ParseError

leaves = st.one_of(
    st.builds(Line, st.integers(-9, 9)),
    st.just(TangentTwist()),
    st.builds(Omega, st.integers(0, 4), st.integers(-5, 5)),
)


def _extend(children):
    small = st.integers(0, 4)
    return st.one_of(
        st.builds(lambda ts: Sum(tuple(ts)), st.lists(children, min_size=2, max_size=3)),
        st.builds(Power, children, st.integers(0, 4)),
        st.builds(Wedge, small, children),
        st.builds(Sym, small, children),
        st.builds(Hom, small, children),
        st.builds(Dual, children),
        st.builds(Twist, children, st.integers(-5, 5)),
    )


exprs = st.recursive(leaves, _extend, max_leaves=6)


class TestParse:
    def test_v_expression(self):
        assert parse("wedge(2, T(-1))") == Wedge(2, TangentTwist())

    def test_atoms(self):
        assert parse("O") == Line(0)
        assert parse("O(-3)") == Line(-3)
        assert parse("O(4)") == Line(4)
        assert parse("Omega(2,-1)") == Omega(2, -1)

    def test_whitespace_insensitive(self):
        assert parse("  twist ( dual( T( -1 ) ) , 2 )  ") == parse("twist(dual(T(-1)),2)")

    def test_sum_and_power_precedence(self):
        assert parse("O + T(-1)^2") == Sum((Line(0), Power(TangentTwist(), 2)))
        assert parse("(O + O(1))^2") == Power(Sum((Line(0), Line(1))), 2)

    def test_hom(self):
        assert parse("hom(3, T(-1))") == Hom(3, TangentTwist())

    @pytest.mark.parametrize(
        "src,offset",
        [
            ("O(", 2),
            ("", 0),
            ("O +", 3),
            ("T(1)", 2),
            ("wedge(x, O)", 6),
            ("O(1) O", 5),
            ("Omega(1 2)", 8),
            ("O ^ -1", 4),
            ("foo", 0),
            ("O(1)$", 4),
        ],
    )
    def test_error_offsets(self, src, offset):
        with pytest.raises(ParseError) as err:
            parse(src)
        assert err.value.offset == offset
        assert str(err.value).startswith(f"PARSE_ERROR at offset {offset}")
        assert err.value.expected

    def test_offsets_are_bytes(self):
        with pytest.raises(ParseError) as err:
            parse("twist(é, 1)")
        assert err.value.offset == 6
        with pytest.raises(ParseError) as err:
            parse("éé")
        assert err.value.offset == 0

    def test_expected_set_mentions_atoms(self):
        with pytest.raises(ParseError) as err:
            parse("O + )")
        assert "'O'" in err.value.expected and "'wedge'" in err.value.expected


class TestRoundTrip:
    @settings(max_examples=200)
    @given(exprs)
    def test_parse_unparse_parse(self, e):
        assert parse(unparse(e)) == e
        assert unparse(parse(unparse(e))) == unparse(e)

    @settings(max_examples=100)
    @given(exprs, st.integers(4, 5))
    def test_printing_preserves_meaning(self, e, n):
        assert elaborate(parse(unparse(e)), n) == elaborate(e, n)

    @pytest.mark.parametrize("src", ["wedge(2, T(-1))", "T(-1)^3", "O + O(1) + Omega(1, 2)", "(O + O(1))^2"])
    def test_canonical_strings(self, src):
        assert unparse(parse(src)) == src


class TestElaborate:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_power_equals_repeated_sum(self, n):
        power = elaborate(parse(f"T(-1)^{n}"), n)
        repeated = elaborate(parse(" + ".join(["T(-1)"] * n)), n)
        assert power == repeated == hom_bundle(n)
        assert elaborate(parse(f"hom({n}, T(-1))"), n) == power

    @pytest.mark.parametrize("n", range(2, 7))
    def test_wedge_square(self, n):
        assert elaborate("wedge(2, T(-1))", n) == wedge2_bundle(n)

    def test_atoms(self):
        assert elaborate("O(3)", 2) == line_bundle(2, 3)
        assert elaborate("T(-1)", 4) == tangent_twist(4)
        assert elaborate("Omega(1, 2)", 3) == form_bundle(3, 1, 2)

    def test_empty_power_is_zero_bundle(self):
        assert elaborate("O(5)^0", 3).rank == 0

    def test_operators(self):
        n = 3
        T = tangent_twist(n)
        assert elaborate("dual(T(-1))", n).chern.coeffs == tuple((-1) ** i * c for i, c in enumerate(T.chern.coeffs))
        assert elaborate("twist(O(1), -1)", n) == line_bundle(n, 0)
        assert elaborate("sym(2, O + O(1))", n) == direct_sum(direct_sum(line_bundle(n, 0), line_bundle(n, 1)),
                                                              line_bundle(n, 2))
        assert elaborate("wedge(3, T(-1))", n) == exterior_power(3, T)

    def test_one_expression_many_n(self):
        e = parse("wedge(2, T(-1))")
        assert [elaborate(e, n).rank for n in range(2, 6)] == [1, 3, 6, 10]
