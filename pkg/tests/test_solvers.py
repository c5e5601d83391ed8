import itertools
import math
import random
import statistics

import pytest
from hypothesis import given, strategies as st

from brute import colourable, max_density, min_max_outdegree
from strategies import instances
from conflictcol.adversary import (
    gen_planar_triangulation,
    gen_random_multigraph,
    gen_random_partition,
    gen_two_vertex,
)
from conflictcol.bounds import bound_max_degree
from conflictcol.model import ConflictInstance, Multigraph, build_instance, validate_colouring
from conflictcol.reductions import AdaptableInstance, check_adapted
from conflictcol.solvers import (
    ParameterError,
    SearchLimits,
    Status,
    TwoPhaseParams,
    extend_peeled,
    kernelize,
    solve_exact,
    solve_lll,
    solve_orientation,
    solve_via_orientation,
    split_adaptable,
    two_phase,
)
from conflictcol.solvers.adaptable import degree_threshold
from conflictcol.solvers.orientation import max_outdegree
from conflictcol.solvers.two_phase import phase_a, phase_a_contract, split_vertices


def forced(k):
    return build_instance(2, [(0, 1)], k, [(1, 1)])


def cycle(n):
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete(n):
    return Multigraph(n, tuple(itertools.combinations(range(n), 2)))


# -- exact

def test_exact_forced_k1_unsat():
    assert solve_exact(forced(1)).status is Status.UNSAT


def test_exact_forced_k2_sat():
    res = solve_exact(forced(2))
    assert res.ok and validate_colouring(forced(2), res.colouring).ok


def test_exact_two_vertex():
    assert solve_exact(gen_two_vertex(2)).status is Status.UNSAT
    rng = random.Random(0)
    g = gen_two_vertex(2).graph
    for _ in range(20):
        assert solve_exact(gen_random_partition(g, 3, rng=rng)).ok


def test_exact_budget_is_a_separate_verdict():
    from conflictcol.adversary import gen_star
    res = solve_exact(gen_star(4), SearchLimits(nodes=1))
    assert res.status is Status.EXHAUSTED
    assert solve_exact(gen_star(4)).status is Status.UNSAT


def test_search_limits_must_be_positive():
    with pytest.raises(ValueError):
        SearchLimits(nodes=0)
    with pytest.raises(ValueError):
        SearchLimits(seconds=-1)


@given(instances(max_n=6, max_k=3, max_m=10))
def test_exact_matches_enumeration(inst):
    res = solve_exact(inst)
    assert res.ok == colourable(inst)
    if res.ok:
        assert validate_colouring(inst, res.colouring).ok


def test_exact_handles_long_paths():
    n = 3000
    g = Multigraph(n, tuple((i, i + 1) for i in range(n - 1)))
    inst = gen_random_partition(g, 2, seed=1)
    assert solve_exact(inst).ok


# -- orientation

def test_orientation_cycle():
    k_star, head = solve_orientation(cycle(5))
    assert k_star == 1 and max_outdegree(cycle(5), head) == 1


def test_orientation_k4():
    assert solve_orientation(complete(4))[0] == 2


def test_orientation_two_vertex():
    assert solve_orientation(gen_two_vertex(2).graph)[0] == 2


def test_orientation_edgeless():
    assert solve_orientation(Multigraph(3, ())) == (0, ())


@st.composite
def multigraphs(draw, max_n=6, max_m=12):
    n = draw(st.integers(1, max_n))
    if n == 1:
        return Multigraph(1, ())
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                          .filter(lambda p: p[0] != p[1]), max_size=max_m))
    return Multigraph(n, tuple(edges))


@given(multigraphs())
def test_orientation_is_optimal(g):
    k_star, head = solve_orientation(g)
    assert max_outdegree(g, head) == k_star
    assert k_star == min_max_outdegree(g) == max_density(g)


def test_via_orientation_tree():
    rng = random.Random(3)
    for n in range(2, 30):
        edges = [(v, rng.randrange(v)) for v in range(1, n)]
        inst = gen_random_partition(Multigraph(n, tuple(edges)), 2, rng=rng)
        res = solve_via_orientation(inst)
        assert res.ok and validate_colouring(inst, res.colouring).ok


def test_via_orientation_planar():
    for seed in range(5):
        inst = gen_random_partition(gen_planar_triangulation(60, seed), 4, seed=seed)
        res = solve_via_orientation(inst)
        assert res.ok and validate_colouring(inst, res.colouring).ok


def test_via_orientation_not_applicable():
    res = solve_via_orientation(gen_two_vertex(2))
    assert res.status is Status.NOT_APPLICABLE
    assert res.counters["k_star"] == 2


# -- resampling

def test_lll_forced_edge():
    for seed in range(20):
        res = solve_lll(forced(2), seed)
        assert res.ok and res.colouring != (1, 1)
        assert res.counters["resamples"] < 20


def test_lll_unsat_hits_cap():
    res = solve_lll(forced(1), 0, cap=500)
    assert res.status is Status.CAP_EXHAUSTED
    assert res.counters["resamples"] == 500


def test_lll_deterministic():
    g = gen_random_multigraph(40, 90, seed=4, max_degree=5)
    inst = gen_random_partition(g, 5, seed=4)
    assert solve_lll(inst, 9) == solve_lll(inst, 9)


def test_lll_max_degree_regime():
    g = gen_random_multigraph(60, 150, seed=8, max_degree=5)
    delta = max(g.degrees)
    assert delta == 5
    inst = gen_random_partition(g, bound_max_degree(5).value, seed=8)
    counts = []
    for seed in range(100):
        res = solve_lll(inst, seed)
        assert res.ok
        counts.append(res.counters["resamples"])
    assert statistics.mean(counts) <= 10 * g.m


# -- adaptable split

def test_split_edgeless():
    a = AdaptableInstance(Multigraph(4, ()), [list(range(1, 9))] * 4, ())
    res = split_adaptable(a, seed=1)
    assert res.ok and check_adapted(a, res.colouring)


def test_split_star():
    n = 101
    g = Multigraph(n, tuple((0, i) for i in range(1, n)))
    rng = random.Random(6)
    a = AdaptableInstance(g, [list(range(1, 41))] * n, [rng.randint(1, 40) for _ in range(100)])
    res = split_adaptable(a, seed=6)
    assert res.ok and check_adapted(a, res.colouring)
    assert degree_threshold(g) == pytest.approx(math.sqrt(200))
    assert res.counters["high"] == 1
    assert res.counters["min_side"] >= 10


def test_split_requires_k8():
    a = AdaptableInstance(Multigraph(2, ((0, 1),)), [[1, 2, 3]] * 2, (1,))
    with pytest.raises(ValueError):
        split_adaptable(a, seed=0)


def test_split_bipartition_cap_failure():
    # 8 colours per list, palette of 8: a side with fewer than 2 is likely
    a = AdaptableInstance(Multigraph(2, ((0, 1),)), [list(range(1, 9))] * 2, (1,))
    res = split_adaptable(a, seed=0, bipartition_cap=1)
    assert res.status in (Status.SAT, Status.FAILURE)
    outcomes = {split_adaptable(a, seed=s, bipartition_cap=1).status for s in range(40)}
    assert Status.FAILURE in outcomes and Status.SAT in outcomes


# -- two-phase

def bounded_instance(seed):
    g = gen_random_multigraph(30, 60, seed=seed, max_degree=5)
    params = TwoPhaseParams.for_graph(g)
    return gen_random_partition(g, params.k_required, seed=seed), params


def test_two_phase_empty_a_equals_lll():
    for seed in range(5):
        inst, params = bounded_instance(seed)
        assert split_vertices(inst.graph, params.d)[0] == []
        res = two_phase(inst, seed=seed)
        assert res.ok
        assert res.colouring == solve_lll(inst, seed).colouring


def test_two_phase_two_vertex():
    g = gen_two_vertex(2).graph
    params = TwoPhaseParams.for_graph(g)
    assert params.d == pytest.approx(math.sqrt(32))
    # both degrees are 4 < sqrt(32), so the high-degree side is empty
    assert split_vertices(g, params.d) == ([], [0, 1])
    assert params.k_required == 9
    inst = ConflictInstance(g, 9, gen_two_vertex(2).pairs)
    res = two_phase(inst, seed=0)
    assert res.ok and validate_colouring(inst, res.colouring).ok
    with pytest.raises(ParameterError):
        two_phase(gen_two_vertex(2).with_budget(3), seed=0)


def test_two_phase_params_desk_scale():
    g = Multigraph(2, ((0, 1),) * 4)
    # formulas only depend on mu and m; emulate m = 10^5, mu = 4
    d = math.sqrt(2 * 4 * 10 ** 5)
    p = TwoPhaseParams(d=d, p=2 ** -4 / math.sqrt(d), prune_cap=math.sqrt(d), b_cap=math.sqrt(d),
                       kA=math.ceil(math.sqrt(d) * math.log(d)),
                       kB=math.ceil(math.sqrt(math.e * (2 * d - 1))) + math.ceil(math.sqrt(d)))
    assert d == pytest.approx(894.43, abs=0.01)
    assert p.b_cap == pytest.approx(29.91, abs=0.01)
    assert p.k_prime == math.ceil(math.sqrt(math.e * (2 * d - 1)))
    assert TwoPhaseParams.for_graph(g).p == pytest.approx(2 ** -4 / math.sqrt(math.sqrt(32)))


def test_two_phase_paper_mode_gate():
    g = gen_two_vertex(2).graph
    with pytest.raises(ParameterError, match="2\\^23"):
        TwoPhaseParams.for_graph(g, mode="paper")
    with pytest.raises(ParameterError):
        TwoPhaseParams(d=10.0, p=1.5, prune_cap=1, b_cap=1, kA=1, kB=1)


def test_two_phase_empty_graph():
    inst = ConflictInstance(Multigraph(3, ()), 1, ())
    assert two_phase(inst, seed=0).colouring == (1, 1, 1)


def hub_instance(seed):
    g = gen_random_multigraph(2000, 20000, seed=seed, max_mult=4, hubs=8, hub_degree=700)
    params = TwoPhaseParams.for_graph(g)
    return gen_random_partition(g, params.k_required, seed=seed), params


def test_two_phase_with_high_degree_side():
    inst, params = hub_instance(1)
    high, low = split_vertices(inst.graph, params.d)
    assert high
    res = two_phase(inst, seed=1)
    assert res.ok and validate_colouring(inst, res.colouring).ok
    assert res.counters["high"] == len(high)
    assert two_phase(inst, seed=1).colouring == res.colouring


def test_phase_a_contract_checked_independently():
    inst, params = hub_instance(2)
    high, _ = split_vertices(inst.graph, params.d)
    a = phase_a(inst, params, high, random.Random(0))
    assert a is not None and phase_a_contract(inst, params, a)
    col = a.colouring
    clash = {}
    for e, (u, v) in enumerate(inst.graph.edges):
        if (u in col) and (v in col):
            assert (col[u], col[v]) != inst.pairs[e]
        elif u in col or v in col:
            y, x = (u, v) if u in col else (v, u)
            if col[y] == inst.local(e, y):
                clash[x] = clash.get(x, 0) + 1
    assert all(c <= params.b_cap for c in clash.values())
    assert {x: c for x, c in a.clashes.items() if c} == clash


# -- peeling

def test_kernelize_forest():
    rng = random.Random(1)
    n = 40
    edges = [(v, rng.randrange(v)) for v in range(1, n) if rng.random() < 0.8]
    inst = gen_random_partition(Multigraph(n, tuple(edges)), 2, rng=rng)
    core, trace = kernelize(inst)
    assert core.n == 0 and len(trace.removed) == n
    assert validate_colouring(inst, extend_peeled((), trace, inst)).ok


def test_kernelize_k5_is_its_own_core():
    inst = gen_random_partition(complete(5), 4, seed=0)
    core, trace = kernelize(inst)
    assert core.graph == complete(5) and trace.removed == ()


def test_kernelize_planar_k6():
    for seed in range(5):
        inst = gen_random_partition(gen_planar_triangulation(100, seed), 6, seed=seed)
        core, trace = kernelize(inst)
        assert core.n == 0
        assert validate_colouring(inst, extend_peeled((), trace, inst)).ok


def test_extend_path():
    inst = build_instance(3, [(0, 1), (1, 2)], 2, [(1, 1), (1, 1)])
    core, trace = kernelize(inst)
    c = extend_peeled((), trace, inst)
    assert validate_colouring(inst, c).ok


def test_extend_forced_edge():
    inst = forced(2)
    core, trace = kernelize(inst)
    assert [v for v, _ in trace.removed] == [0, 1]
    # the last vertex removed is coloured first and takes colour 1
    assert extend_peeled((), trace, inst) == (2, 1)


def test_trace_degrees_below_k():
    rng = random.Random(4)
    for _ in range(30):
        g = gen_random_multigraph(30, 60, seed=rng.randrange(10 ** 6), max_mult=2)
        inst = gen_random_partition(g, 4, rng=rng)
        core, trace = kernelize(inst)
        assert all(len(edges) < inst.k for _, edges in trace.removed)
        assert all(d >= inst.k for d in core.graph.degrees)


@given(instances(max_n=8, max_k=4, max_m=16))
def test_extension_never_recolours_core(inst):
    core, trace = kernelize(inst)
    res = solve_exact(core)
    if not res.ok:
        return
    c = extend_peeled(res.colouring, trace, inst)
    assert validate_colouring(inst, c).ok
    assert tuple(c[v] for v in trace.core_vertices) == res.colouring


def test_random_instances_peel_completely():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randint(2, 50)
        g = gen_random_multigraph(n, rng.randint(0, 3 * n), seed=rng.randrange(10 ** 6), max_mult=3)
        k = max(g.degrees, default=0) + 1
        inst = gen_random_partition(g, k, rng=rng)
        core, trace = kernelize(inst)
        assert core.n == 0
        assert validate_colouring(inst, extend_peeled((), trace, inst)).ok
