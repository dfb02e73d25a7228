import pytest
from hypothesis import given, strategies as st

from sumsetgrowth.errors import (
    ArityMismatch,
    BadModulus,
    IndexOutOfRange,
    NoIdentity,
    NotAssociative,
    NotCommutative,
    SpecMismatch,
)
from sumsetgrowth.instances import (
    cyclic_monoid_table,
    direct_product_table,
    max_semilattice_table,
    null_monoid_table,
    random_table,
    union_semilattice_table,
)
from sumsetgrowth.semigroup import (
    FreeInteger,
    Modular,
    SemigroupSpec,
    add,
    canonicalize,
    cyclic,
    element_set,
    integers,
    product_spec,
    table_spec,
    validate_spec,
)


def test_free_integer_valid():
    spec = validate_spec(SemigroupSpec("product", components=(FreeInteger(),)))
    assert spec.identity == (0,)


def test_z2_table_valid():
    spec = table_spec([[0, 1], [1, 0]], 0)
    assert spec.order == 2


def test_not_commutative_witness():
    with pytest.raises(NotCommutative) as ei:
        table_spec([[0, 1], [0, 0]], 0)
    assert ei.value.witness == (0, 1)


def test_not_associative_witness():
    # commutative with identity 0, but (1+1)+2 = 0 while 1+(1+2) = 1
    t = [[0, 1, 2], [1, 2, 0], [2, 0, 0]]
    with pytest.raises(NotAssociative) as ei:
        table_spec(t, 0)
    i, j, k = ei.value.witness
    assert t[t[i][j]][k] != t[i][t[j][k]]


def test_no_identity():
    with pytest.raises(NoIdentity):
        table_spec(max_semilattice_table(3), 2)


def test_bad_modulus():
    with pytest.raises(BadModulus):
        product_spec(Modular(0))


def test_adjoin_identity():
    # zero semigroup {a, z} with every product z: no identity until adjoined
    t = [[1, 1], [1, 1]]
    with pytest.raises(NoIdentity):
        table_spec(t, 0)
    spec = table_spec(t, adjoin=True)
    assert spec.order == 3 and spec.identity_index == 2


def test_add_examples():
    z = integers(1)
    assert add(z, (3,), (5,)) == (8,)
    assert add(cyclic(12), (4,), (10,)) == (2,)
    assert add(integers(2), (1, 0), (0, 1)) == (1, 1)


def test_add_rejects_foreign_elements():
    with pytest.raises(SpecMismatch):
        add(cyclic(12), (14,), (1,))
    with pytest.raises(SpecMismatch):
        add(integers(2), (1,), (1,))


def test_canonicalize_examples():
    assert canonicalize(cyclic(12), 14) == (2,)
    assert canonicalize(integers(1), -3) == (-3,)
    with pytest.raises(IndexOutOfRange):
        canonicalize(table_spec(cyclic_monoid_table(0, 3)), 5)
    with pytest.raises(ArityMismatch):
        canonicalize(integers(2), (1, 2, 3))


def test_element_set_dedups_after_canonicalization():
    s = element_set(cyclic(12), [0, 12, 24, 5])
    assert len(s) == 2 and s.sorted() == [(0,), (5,)]


@pytest.mark.parametrize("table", [
    cyclic_monoid_table(0, 5),
    cyclic_monoid_table(3, 2),
    cyclic_monoid_table(4, 1),
    max_semilattice_table(5),
    union_semilattice_table(3),
    null_monoid_table(4),
    direct_product_table(cyclic_monoid_table(1, 2), cyclic_monoid_table(0, 3)),
])
def test_family_tables_validate(table):
    table_spec(table, 0)


product_specs = st.lists(
    st.one_of(st.just(FreeInteger()), st.builds(Modular, st.integers(1, 20))),
    min_size=1, max_size=3,
).map(lambda cs: product_spec(*cs))


@st.composite
def spec_and_elements(draw, n=3):
    spec = draw(product_specs)
    raw = st.tuples(*[st.integers(-50, 50)] * spec.arity)
    return spec, [canonicalize(spec, draw(raw)) for _ in range(n)]


@given(spec_and_elements())
def test_product_axioms(case):
    spec, (x, y, z) = case
    assert add(spec, x, add(spec, y, z)) == add(spec, add(spec, x, y), z)
    assert add(spec, x, y) == add(spec, y, x)
    assert add(spec, spec.identity, x) == x
    s = add(spec, x, y)
    assert canonicalize(spec, s) == s


@given(product_specs, st.data())
def test_canonicalize_idempotent(spec, data):
    raw = data.draw(st.tuples(*[st.integers(-1000, 1000)] * spec.arity))
    once = canonicalize(spec, raw)
    assert canonicalize(spec, once) == once


@given(st.integers(0, 2**32))
def test_random_tables_are_monoids(seed):
    import random

    spec = random_table(random.Random(seed))
    n, t, e = spec.order, spec.table, spec.identity_index
    for i in range(n):
        assert t[e][i] == i
        for j in range(n):
            assert t[i][j] == t[j][i]
