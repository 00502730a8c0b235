import pathlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halg import dsl
from halg.ring import GradedRing

from conftest import make_ring

DATA = pathlib.Path(__file__).parent / "data"
FILES = sorted(DATA.glob("*.halg"))


def test_ring_block():
    doc = dsl.parse("ring R\nchar 101\nvars x:1 y:1\nideal x*y\nend")
    R = doc.ring("R")
    assert R.char == 101 and R.names == ("x", "y") and R.hilbert_function(3) == [1, 2, 2, 2]


def test_module_block():
    text = "ring R\nvars x:1 y:1\nend\nmodule M over R\ngens 0\nrels\n[x, y]\nend\n"
    M = dsl.parse(text).module("M")
    assert M.rank == 1 and len(M.rels) == 2
    assert M.hilbert_function(0, 3) == [1, 0, 0, 0]


def test_complex_block_and_comments():
    text = (DATA / "node.halg").read_text()
    doc = dsl.parse(text)
    K = doc.complex("K")
    assert K.ranks() == {-1: 1, 0: 1} and K.check_d_squared()


@pytest.mark.parametrize("text,line,col,fragment", [
    ("ring R\nvars x:0\nend", 2, 6, "weight must be positive"),
    ("ring R\nvars x:1\nideal x^^2\nend", 3, 7, ""),
    ("ring R\nchar 15\nvars x:1\nend", 2, 6, "not prime"),
    ("ring R\nvars x:1\nend\nmodule M over S\ngens 0\nend", 4, 15, "unknown ring"),
    ("ring R\nvars x:1\n", 1, 1, "missing 'end'"),
    ("ring R\nvars x:1 y:1\nideal x^2 - y\nend", 1, 1, "homogeneous"),
    ("ring R\nvars x:1\nend\nmodule M over R\ngens 0 0\nrels\n[x]\nend", 4, 1, "one row per generator"),
    ("frobnicate", 1, 1, "outside a block"),
    ("ring R\nvars x:1\nend\ncomplex K over R\nterm 0 free 0\nterm 1 free 0\ndiff 0\n[x]\nend",
     4, 1, ""),
])
def test_errors_carry_positions(text, line, col, fragment):
    with pytest.raises(dsl.DSLError) as info:
        dsl.parse(text)
    err = info.value
    assert err.line == line and err.col == col
    assert fragment in err.message


def test_duplicate_names_rejected():
    with pytest.raises(dsl.DSLError):
        dsl.parse("ring R\nvars x:1\nend\nring R\nvars y:1\nend")


def test_non_chain_complex_rejected():
    text = ("ring R\nvars x:1\nend\ncomplex K over R\nterm -1 free 1\nterm 0 free 1\nterm 1 free 2\n"
            "diff -1\n[x]\ndiff 0\n[x]\nend")
    with pytest.raises(dsl.DSLError):
        dsl.parse(text)


def test_directives():
    doc = dsl.parse("use C omega\nring R\nvars x:1\nend")
    assert doc.directives == {"C": "omega"}


@pytest.mark.parametrize("path", FILES, ids=[p.stem for p in FILES])
def test_round_trip(path):
    doc = dsl.parse(path.read_text())
    again = dsl.parse(dsl.emit(doc))
    assert again == doc
    assert dsl.emit(again) == dsl.emit(doc)


def test_ring_block_emits_reparsable_ring():
    R = make_ring("semigroup_345")
    text = "\n".join(dsl.emit_ring(dsl.ring_block(R, "T")))
    S = dsl.parse(text).ring("T")
    assert S.same_ring(R)
    assert S.hilbert_function(15) == R.hilbert_function(15)


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
                min_size=1, max_size=3))
@settings(max_examples=30, deadline=None)
def test_generated_rings_round_trip(gens):
    R = GradedRing(["x", "y", "z"], [1, 1, 1])
    ideal = []
    for c, a, b, d in gens:
        if a + b + d:
            # homogeneous of degree a + b + d
            ideal.append(R.poly("%d*x^%d*y^%d*z^%d" % (c, a, b, d)).as_dict())
    blk = dsl.RingBlock("R", 32003, [("x", 1), ("y", 1), ("z", 1)], ideal)
    doc = dsl.InputDocument(rings={"R": blk})
    assert dsl.parse(dsl.emit(doc)) == doc
