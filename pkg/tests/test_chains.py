import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skipfree import (
    ContinuousChain,
    DiscreteChain,
    RangeError,
    SchemaError,
    ValidationError,
    parse_chain,
    reaches_absorption,
    serialize_chain,
    transient_block,
)
from skipfree.corpus import random_continuous_chain, random_discrete_chain


def test_parse_smallest_chain():
    chain = parse_chain('{"type":"discrete","d":1,"rows":[{"r":0.5,"p":0.5}]}')
    assert isinstance(chain, DiscreteChain)
    assert chain.d == 1 and chain.hold == (0.5,) and chain.up == (0.5,)


def test_parse_down_jump_row():
    doc = {
        "type": "discrete",
        "d": 2,
        "rows": [{"r": 0.2, "p": 0.8}, {"r": 0.3, "p": 0.4, "q": [0.3]}],
    }
    chain = parse_chain(json.dumps(doc))
    assert chain.down[1][0] == 0.3
    # oracle: sum every row by hand
    assert chain.hold[0] + chain.up[0] == 1.0
    assert chain.hold[1] + chain.up[1] + chain.down[1][0] == 1.0


def test_parse_rejects_bad_row_sum():
    with pytest.raises(ValidationError) as err:
        parse_chain('{"type":"discrete","d":1,"rows":[{"r":0.6,"p":0.5}]}')
    assert err.value.row == 0
    assert err.value.residual == pytest.approx(0.1, abs=1e-12)


def test_parse_continuous():
    chain = parse_chain(
        '{"type":"continuous","d":2,"rows":[{"alpha":1.0},{"alpha":1.0,"beta":[1.0]}]}'
    )
    assert isinstance(chain, ContinuousChain)
    assert chain.gamma == (1.0, 2.0)


@pytest.mark.parametrize(
    "doc,fragment",
    [
        ("{not json", "JSON"),
        ('{"type":"discrete","d":1}', "missing"),
        ('{"type":"discrete","d":1,"rows":[{"r":0.5,"p":0.5}],"x":1}', "unknown"),
        ('{"type":"markov","d":1,"rows":[]}', "type"),
        ('{"type":"discrete","d":0,"rows":[]}', "d must be"),
        ('{"type":"discrete","d":1,"rows":[{"r":0.5,"p":0.5,"z":1}]}', "unknown"),
        ('{"type":"discrete","d":1,"rows":[{"r":"a","p":0.5}]}', "number"),
        ('{"type":"discrete","d":2,"rows":[{"r":0.5,"p":0.5},{"r":0.5,"p":0.4,"q":[0.1,0.2]}]}', "length"),
        ('{"type":"continuous","d":1,"rows":[{"beta":[]}]}', "missing"),
    ],
)
def test_schema_errors(doc, fragment):
    with pytest.raises(SchemaError) as err:
        parse_chain(doc)
    assert fragment.lower() in str(err.value).lower()


def test_validation_rejects_zero_up_probability():
    with pytest.raises(ValidationError):
        DiscreteChain(d=1, hold=[1.0], up=[0.0])
    with pytest.raises(ValidationError):
        ContinuousChain(d=1, up=[0.0])


def test_validation_rejects_entry_outside_unit_interval():
    with pytest.raises(ValidationError):
        DiscreteChain(d=1, hold=[-0.5], up=[1.5])


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 8))
def test_roundtrip_discrete(seed, d):
    chain = random_discrete_chain(np.random.default_rng(seed), d)
    again = parse_chain(serialize_chain(chain))
    assert again == chain  # bit-exact: doubles survive the JSON round trip


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 8))
def test_roundtrip_continuous(seed, d):
    chain = random_continuous_chain(np.random.default_rng(seed), d)
    assert parse_chain(serialize_chain(chain)) == chain


def test_transient_block_values(d1_geometric, d2_mixed):
    assert transient_block(d1_geometric, 0).tolist() == [[0.5]]
    assert transient_block(d2_mixed, 1).tolist() == [[0.2, 0.8], [0.3, 0.3]]
    chain = ContinuousChain(d=2, up=[1.0, 2.0])
    assert transient_block(chain, 1).tolist() == [[-1.0, 1.0], [0.0, -2.0]]


def test_transient_block_range(d2_mixed):
    with pytest.raises(RangeError):
        transient_block(d2_mixed, 2)
    with pytest.raises(RangeError):
        transient_block(d2_mixed, -1)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 9))
def test_block_is_lower_hessenberg_with_stochastic_rows(seed, d):
    chain = random_discrete_chain(np.random.default_rng(seed), d)
    for n in range(d):
        block = transient_block(chain, n)
        assert np.all(np.triu(block, 2) == 0.0)
        # row sums plus the implicit absorption/overflow mass
        for i in range(n + 1):
            implicit = chain.up[i] if i == n else 0.0
            assert block[i].sum() + implicit == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 9))
def test_continuous_rows_balance(seed, d):
    chain = random_continuous_chain(np.random.default_rng(seed), d)
    block = transient_block(chain, d - 1)
    assert np.all(np.triu(block, 2) == 0.0)
    for i in range(d):
        off = block[i].sum() - block[i, i]
        assert off + (chain.up[i] if i == d - 1 else 0.0) == pytest.approx(
            chain.gamma[i], rel=1e-12
        )


def test_reaches_absorption_always_true(d1_geometric, d2_mixed, rates11_coupled):
    assert reaches_absorption(d1_geometric)
    assert reaches_absorption(d2_mixed)
    assert reaches_absorption(rates11_coupled)
