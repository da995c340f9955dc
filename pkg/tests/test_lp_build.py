import pytest

from discrete_farkas.core import Instance, Mode, NoncompactColumn, add_idx, leq, s, sub_idx
from discrete_farkas.lp_build import LpTooLarge, assemble, degree_bound, dims
from discrete_farkas.simplex import check_point, solve_feasibility
from helpers import basic_solutions, brute_solutions, random_nonneg, seeded


def test_degree_bound_examples():
    assert degree_bound(Instance([[2, 3]], [5])) == 3
    assert degree_bound(Instance([[1, 0], [0, 1]], [2, 3])) == 4
    assert degree_bound(Instance([[2, 3]], [0])) == -2


def test_degree_bound_rejects_zero_column():
    with pytest.raises(NoncompactColumn):
        degree_bound(Instance([[2, 0]], [4]))


def test_degree_bound_requires_nonneg_mode():
    with pytest.raises(ValueError):
        degree_bound(Instance([[2, -1]], [1], Mode.GENERAL))


def test_dims_examples():
    d = dims(Instance([[2, 3]], [5]))
    assert (d.num_vars, d.num_rows, d.degree_bound_used) == (8, 7, 3)
    d = dims(Instance([[1]], [1]))
    assert (d.num_vars, d.num_rows) == (1, 2)
    with pytest.raises(ValueError):
        dims(Instance([[2, 3]], [0]))
    with pytest.raises(ValueError):
        assemble(Instance([[2, 3]], [0]))


@pytest.mark.parametrize("a,b", [((2, 3), 5), ((1,), 7), ((3, 5, 4), 11), ((2, 2), 9)])
def test_knapsack_dims(a, b):
    d = dims(Instance([list(a)], [b]))
    n = len(a)
    assert d.num_vars == n * (b + 1 - min(a))
    assert d.num_rows == b + 1 + max(a) - min(a)


def test_assemble_single_variable():
    p = assemble(Instance([[1]], [1]), pruned=False)
    assert p.num_vars == 1 and p.num_rows == 2
    assert p.var_labels == ((0, (0,)),)
    assert p.row_labels == ((0,), (1,))
    assert p.rows() == [{0: -1}, {0: 1}]
    assert p.rhs == (-1, 1)
    out = solve_feasibility(p)
    assert out.point == [1]


def test_assemble_knapsack_accepts_telescoping_vector():
    inst = Instance([[2, 3]], [5])
    p = assemble(inst, pruned=False)
    assert p.num_rows == 7
    y = [0] * p.num_vars
    y[p.var_labels.index((0, (0,)))] = 1
    y[p.var_labels.index((1, (2,)))] = 1
    assert check_point(p.rows(), p.rhs, y)


@pytest.mark.parametrize("pruned", [True, False])
def test_assemble_infeasible_knapsack_has_no_nonneg_solution(pruned):
    inst = Instance([[2, 4]], [5])
    assert brute_solutions(inst) == []
    p = assemble(inst, pruned=pruned)
    assert basic_solutions(p.rows(), p.rhs, p.num_vars) == []


def _check_structure(inst, p):
    row_of = {g: i for i, g in enumerate(p.row_labels)}
    assert len(row_of) == p.num_rows
    for (j, alpha), col in zip(p.var_labels, p.columns):
        entries = dict(col)
        assert set(entries.values()) <= {-1, 1}
        assert entries[row_of[alpha]] == -1
        assert entries[row_of[add_idx(alpha, inst.column(j))]] == 1
        assert len(entries) == 2
    assert sorted(p.rhs) == [-1] + [0] * (p.num_rows - 2) + [1]
    assert p.rhs[row_of[inst.b]] == 1
    assert p.rhs[row_of[(0,) * inst.m]] == -1


def _reconstruct(inst, p):
    # rebuild each row from labels alone: +Q_j[gamma - A_j] - Q_j[gamma]
    var_of = {lab: v for v, lab in enumerate(p.var_labels)}
    rows = []
    for g in p.row_labels:
        row = {}
        for j, col in enumerate(inst.columns):
            prev = sub_idx(g, col)
            if (j, prev) in var_of:
                row[var_of[(j, prev)]] = 1
            if (j, g) in var_of:
                row[var_of[(j, g)]] = -1
        rows.append(row)
    return rows


def test_random_structure_and_dims():
    rng = seeded(7)
    done = 0
    while done < 60:
        inst = random_nonneg(rng, max_b=8)
        if not any(inst.b) or degree_bound(inst) < 0:
            continue
        full = assemble(inst, pruned=False)
        d = dims(inst)
        bstar = degree_bound(inst)
        assert full.num_vars == d.num_vars == inst.n * s(bstar, inst.m)
        assert full.num_rows == d.num_rows == s(bstar + max(inst.column_sums()), inst.m)
        pruned = assemble(inst)
        for p in (full, pruned):
            _check_structure(inst, p)
            assert _reconstruct(inst, p) == p.rows()
        assert all(leq(g, inst.b) for g in pruned.row_labels)
        assert all(leq(add_idx(a, inst.column(j)), inst.b) for j, a in pruned.var_labels)
        done += 1


def test_pruned_and_full_agree():
    rng = seeded(11)
    done = 0
    while done < 40:
        inst = random_nonneg(rng, max_m=2, max_n=3, max_b=7)
        if not any(inst.b) or degree_bound(inst) < 0:
            continue
        v_full = solve_feasibility(assemble(inst, pruned=False)).feasible
        v_pruned = solve_feasibility(assemble(inst)).feasible
        assert v_full == v_pruned == bool(brute_solutions(inst))
        done += 1


def test_variable_and_row_order():
    p = assemble(Instance([[1, 1], [1, 0]], [2, 1]), pruned=False)
    js = [j for j, _ in p.var_labels]
    assert js == sorted(js)
    keys = [(sum(g), g) for g in p.row_labels]
    assert keys == sorted(keys)


def test_row_budget():
    with pytest.raises(LpTooLarge):
        assemble(Instance([[1, 1, 1]], [5]), pruned=True, max_rows=3)


def test_dump_lists_every_row():
    p = assemble(Instance([[2, 3]], [5]))
    text = p.dump()
    assert len(text.splitlines()) == p.num_rows
    assert text.splitlines()[0] == "1: - Q1[1] - Q2[1] = -1"
