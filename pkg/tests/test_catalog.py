from importlib import resources
from math import factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _oracle as ora
from conftest import cyc
from hallpi import (
    InputError,
    PermutationGroup,
    builtin,
    centralizer,
    cyclic_group,
    direct_product,
    extend_by_inverse_transpose,
    flag_stabilizer,
    general_linear_group,
    is_hall_subgroup,
    parse_group_file,
    subgroup_conjugacy_witness,
    symmetric_group,
    write_group_file,
)
from hallpi.catalog import spec_of
from hallpi.search import center


def gl_formula(n):
    return prod(2 ** n - 2 ** i for i in range(n))


def test_builtin_examples():
    assert builtin("sym:4").order() == 24
    G = builtin("gl2", 3)
    assert (G.order(), G.degree) == (168, 7)
    G5 = builtin("gl2:5")
    assert (G5.order(), G5.degree) == (9_999_360, 31)
    assert G5.order() == 31 * 30 * 28 * 24 * 16
    assert G5.order() != 99_999_360


@pytest.mark.parametrize("bad", ["foo:3", "sym", "sym:x", "gl2:9", "dihedral:2"])
def test_builtin_rejects(bad):
    with pytest.raises(InputError):
        builtin(bad)


@pytest.mark.parametrize("fam,n,formula", [
    ("sym", n, factorial(n)) for n in range(1, 8)] + [
    ("alt", n, max(1, factorial(n) // 2)) for n in range(1, 8)] + [
    ("cyclic", n, n) for n in (1, 2, 5, 12)] + [
    ("dihedral", n, 2 * n) for n in (3, 4, 7, 10)] + [
    ("gl2", n, gl_formula(n)) for n in (1, 2, 3, 4, 5)] + [
    ("ghat", n, 2 * gl_formula(n)) for n in (3, 4)])
def test_builtin_orders_match_formulas(fam, n, formula):
    assert builtin(fam, n).order() == formula


def test_small_builtins_match_enumeration():
    for name in ("sym:4", "alt:5", "dihedral:6", "gl2:3", "ghat:3"):
        G = builtin(name)
        assert len(ora.elements_of(G)) == G.order()


def test_extension_examples(ghat3, ghat5):
    G, A, iota = ghat3.group, ghat3.gl, ghat3.iota
    assert (G.order(), G.degree) == (336, 14)
    assert (ghat5.group.order(), ghat5.group.degree) == (19_998_720, 62)
    assert iota.order() == 2
    assert G.is_normal_subgroup(A) and G.order() == 2 * A.order()
    assert not A.contains(iota)


def test_extension_rejects_small_n():
    with pytest.raises(InputError):
        extend_by_inverse_transpose(2)


def test_iota_is_inverse_transpose():
    from hallpi.catalog import _inverse, _transpose, gl_generator_rows

    ext = extend_by_inverse_transpose(4)
    for rows in gl_generator_rows(4):
        g = ext.embed_matrix(rows)
        want = ext.embed_matrix(_inverse(_transpose(rows, 4), 4))
        assert g.conjugate(ext.iota) == want


def test_iota_moves_line_stabilizer_to_plane_stabilizer(ghat3):
    A, iota = ghat3.gl, ghat3.iota
    line = A.stabilizer(1)  # fixes the vector 1 and so acts on the other covectors
    image = line.conjugate(iota)
    assert A.contains_group(image)
    assert subgroup_conjugacy_witness(A, line, image) is None
    # the image fixes a covector, i.e. stabilizes a plane
    assert any(len(o) == 1 for o in image.orbits() if o[0] > 7)


def test_flag_stabilizer_examples(gl5, gl3):
    H1 = flag_stabilizer(5, (2, 1, 2))
    assert H1.order() == 9216 == 2 ** 10 * 3 ** 2
    H2 = flag_stabilizer(5, (1, 2, 2))
    assert subgroup_conjugacy_witness(gl5, H1, H2) is None
    P = flag_stabilizer(3, (2, 1))
    assert P.order() == 24 and gl3.contains_group(P)
    assert is_hall_subgroup(gl3, P, (2, 3))


@pytest.mark.parametrize("dims", [(2, 1, 2), (1, 2, 2), (2, 2, 1), (1, 1, 1, 1, 1), (3, 2), (5,)])
def test_flag_stabilizer_orders(dims, gl5):
    H = flag_stabilizer(5, dims)
    fresh = PermutationGroup(H.degree, H._gens)  # no order hint
    off = sum(dims[a] * dims[b] for a in range(len(dims)) for b in range(a + 1, len(dims)))
    assert fresh.order() == 2 ** off * prod(gl_formula(d) for d in dims)
    assert gl5.contains_group(H)
    if all(d <= 2 for d in dims) and len(dims) == 3:
        assert is_hall_subgroup(gl5, H, (2, 3))


@pytest.mark.parametrize("dims", [(2, 2), (0, 5), (), (6, -1)])
def test_flag_stabilizer_rejects(dims):
    with pytest.raises(InputError):
        flag_stabilizer(5, dims)


def test_direct_product_examples(gl3):
    assert direct_product(cyclic_group(2), cyclic_group(3)).order() == 6
    P = direct_product(gl3, cyclic_group(2))
    hat = extend_by_inverse_transpose(3).group
    assert P.order() == hat.order() == 336
    # a central involution in the product, none in the extension
    assert center(P).order() == 2
    assert center(hat).order() == 1
    assert centralizer(hat, hat).order() == 1
    assert direct_product(symmetric_group(3), cyclic_group(5)).order() == 30


# -- group files -------------------------------------------------------------


def test_parse_examples():
    g = parse_group_file("permgroup v1 degree=3\n(1 2 3)\n")
    assert g.group().order() == 3
    t = parse_group_file("permgroup v1 degree=4\n()\n")
    assert t.group().order() == 1


def test_shipped_fixture():
    text = resources.files("hallpi").joinpath("fixtures/gl3_2.permgroup").read_text()
    spec = parse_group_file(text)
    assert spec.group().order() == 168
    assert write_group_file(spec) == text
    # the fixture was produced by the writer from the gl2:3 builtin
    assert spec.group() == general_linear_group(3)
    assert write_group_file(spec_of("gl3_2", general_linear_group(3), spec.provenance)) == text


@pytest.mark.parametrize("text,line", [
    ("degree=3\n(1 2)\n", 1),
    ("permgroup v1 degree=3\n(1 2\n", 2),
    ("permgroup v1 degree=3\n(1 1)\n", 2),
    ("permgroup v1 degree=3\n(1 2)\n\n(1 4)\n", 4),
    ("permgroup v1 degree=x\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(InputError, match=f"line {line}"):
        parse_group_file(text)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.permutations(list(range(1, n + 1))), max_size=4))))
def test_writer_round_trip(data):
    n, imgs = data
    from hallpi import Permutation
    from hallpi.catalog import GroupSpec

    spec = GroupSpec("g", n, tuple(Permutation(i) for i in imgs), "note")
    text = write_group_file(spec)
    back = parse_group_file(text, "g")
    assert write_group_file(back) == text
    assert back.generators == spec.generators


def test_writer_canonical_cycle_form():
    from hallpi.catalog import GroupSpec

    spec = GroupSpec("g", 5, (cyc(5, "(4 5)(2 3 1)"),))
    assert write_group_file(spec).splitlines()[1] == "(1 2 3)(4 5)"
