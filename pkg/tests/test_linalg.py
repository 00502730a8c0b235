import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from halg.linalg import EchelonSpace, nullspace, rank, rref

import oracles

P = 7

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, P - 1), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rank_matches_reference(rows):
    A = np.array(rows, dtype=np.int64)
    assert rank(A, P) == oracles.rank(rows, len(rows[0]), P)


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_nullspace_is_kernel_of_full_dimension(rows):
    A = np.array(rows, dtype=np.int64)
    N = nullspace(A, P)
    ncols = A.shape[1]
    assert len(N) + rank(A, P) == ncols
    for v in N:
        assert not ((A @ np.asarray(v)) % P).any()


def test_rref_pivots_identity_columns():
    A = np.array([[2, 4, 1], [1, 2, 3]], dtype=np.int64)
    R, piv = rref(A, P)
    assert piv == [0, 2]
    assert R[0, 0] == 1 and R[1, 2] == 1 and R[0, 2] == 0


def test_echelon_space_membership():
    E = EchelonSpace(3, P)
    assert E.add([1, 2, 0])
    assert not E.add([2, 4, 0])
    assert [3, 6, 0] in E
    assert [0, 0, 1] not in E
    assert E.dim == 1
