"""Five optimizers, one surface, ten seeds.

Run with:  python3 demos/compare_optimizers.py

Every optimizer is reachable through the same dispatch: an OptimizerSpec
names the algorithm, its parameter overrides, and the budget; the domain and
objective come from the function registry. That makes head-to-head
comparisons a few lines of orchestration.
"""

import statistics

from ember import OptimizerSpec, domain_box, make_objective, optimizer_names, run_optimizer

FUNCTION = "ackley"
DIMENSION = 2
SEEDS = range(10)

objective = make_objective(FUNCTION, DIMENSION)
box = domain_box(FUNCTION, DIMENSION)

print(f"{FUNCTION}, {DIMENSION}-d, {len(list(SEEDS))} seeds, 300 iterations, 40 agents")
print()
print(f"{'algorithm':<10} {'median best':>14} {'min best':>14} {'median time':>12}")
print("-" * 54)

for name in optimizer_names():
    finals = []
    times = []
    for seed in SEEDS:
        spec = OptimizerSpec(name=name, max_iter=300, num_agents=40, seed=seed)
        outcome = run_optimizer(spec, objective, box)
        finals.append(outcome.best_fitness)
        times.append(outcome.execution_time)
    print(f"{name:<10} {statistics.median(finals):>14.4e} {min(finals):>14.4e} "
          f"{statistics.median(times) * 1e3:>10.1f}ms")

print()
print("parameter overrides ride along in the spec, for example a slower")
print("annealing schedule:")
slow = OptimizerSpec(name="sa", params={"cooling_rate": 0.999}, max_iter=300,
                     num_agents=40, seed=0)
fast = OptimizerSpec(name="sa", params={"cooling_rate": 0.80}, max_iter=300,
                     num_agents=40, seed=0)
print(f"sa cooling 0.999 -> best {run_optimizer(slow, objective, box).best_fitness:.4e}")
print(f"sa cooling 0.80  -> best {run_optimizer(fast, objective, box).best_fitness:.4e}")
