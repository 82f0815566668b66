"""Quick check of the `brim` extension module."""

import brim

g = brim.Graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
assert g.n == 3 and len(g.edges) == 3
assert g.cut_value([1, -1, 1]) == 2.0
assert g.ising_energy([1, -1, 1]) == g.total_weight() - 2 * 2.0

best, spins = g.brute_force_maxcut()
assert best == 2.0 and g.cut_value(spins) == best

text = g.to_gset()
assert brim.Graph.from_gset(text).edges == g.edges

r = brim.gen_random_graph(20, 0.4, weights="int:-5:10", seed=7)
exact, _ = r.brute_force_maxcut()
for solver in ("brim", "sa", "asa", "oim"):
    reports = brim.solve(r, solver=solver, runs=4, seed=1)
    assert len(reports) == 4
    assert all(rep.cut <= exact + 1e-9 for rep in reports)
    print(solver, max(rep.cut for rep in reports), "of", exact)

traj = brim.simulate(r, config="trace_stride = 100\nperturb_period = 3\nperturb_nodes = 4", seed=3)
assert len(traj.final_voltages) == 20 and traj.events > 0
assert traj.trace_csv.count("\n") > 1

assert brim.anneal_gain(0.0, 0.0, 1.0, 10.0) == 0.0
assert abs(brim.ziv_current(0.5) - (0.125 - 0.5)) < 1e-12

try:
    brim.Graph(2, [(0, 0, 1.0)])
except ValueError:
    pass
else:
    raise AssertionError("self-loop accepted")

print("smoke test ok")
