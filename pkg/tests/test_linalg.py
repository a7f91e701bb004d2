"""Fraction-exact linear algebra, cross-checked against known identities."""

from fractions import Fraction

from hypothesis import given, strategies as st

from rescrit.linalg import (
    RationalMatrix,
    in_row_span,
    independent_row_indices,
    nullspace_of_rows,
    rank_of_rows,
    solve_linear,
)

entries = st.fractions(min_value=-9, max_value=9, max_denominator=4)


def matrix_strategy(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(
            st.tuples(*[entries] * c), min_size=1, max_size=max_rows
        )
    )


@given(matrix_strategy())
def test_rank_nullity(rows):
    ncols = len(rows[0])
    rank = rank_of_rows(rows)
    kernel = nullspace_of_rows(rows, ncols)
    assert rank + len(kernel) == ncols
    for vec in kernel:
        for row in rows:
            assert sum(r * v for r, v in zip(row, vec)) == 0
    # kernel vectors are independent
    assert rank_of_rows(kernel) == len(kernel) if kernel else True


@given(matrix_strategy())
def test_independent_rows_span_everything(rows):
    chosen = independent_row_indices(rows)
    assert len(chosen) == rank_of_rows(rows)
    basis = [rows[i] for i in chosen]
    for row in rows:
        assert in_row_span(basis, row)


@given(matrix_strategy(max_rows=4, max_cols=4))
def test_solve_linear_solves(rows):
    ncols = len(rows[0])
    # build a consistent right-hand side from a known solution
    witness = [Fraction(i + 1, 2) for i in range(ncols)]
    rhs = [sum(r * w for r, w in zip(row, witness)) for row in rows]
    solution = solve_linear(rows, rhs)
    assert solution is not None
    for row, b in zip(rows, rhs):
        assert sum(r * s for r, s in zip(row, solution)) == b


def test_solve_linear_detects_inconsistency():
    rows = [[1, 0], [1, 0]]
    assert solve_linear(rows, [0, 1]) is None


def test_rank_on_known_matrix():
    rows = [
        [1, 2, 3],
        [2, 4, 6],
        [0, 1, 1],
    ]
    assert rank_of_rows(rows) == 2
    kernel = nullspace_of_rows(rows)
    assert len(kernel) == 1
    # kernel of the matrix above is spanned by (1, 1, -1) up to scale
    v = kernel[0]
    assert v[0] == v[1] == -v[2]


def test_rational_matrix_ops():
    m = RationalMatrix([[1, 2], [3, 4]])
    assert m.rank() == 2
    assert m.transpose().multiply(m).rank() == 2
    singular = RationalMatrix([[1, 2], [2, 4]])
    assert singular.rank() == 1
    assert len(singular.nullspace()) == 1
    assert not m.is_zero()


def test_zero_head_rescale_regression():
    # first pivot candidate is zero; elimination has to swap, not divide
    rows = [
        [0, 1, 1],
        [1, 0, 1],
        [1, 1, 0],
    ]
    assert rank_of_rows(rows) == 3
    assert nullspace_of_rows(rows) == []
