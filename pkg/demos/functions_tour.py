"""A walking tour of the benchmark function registry.

Run with:  python3 demos/functions_tour.py

The registry holds 24 continuous test functions. Each entry knows its search
domain, its attribute tags, and (where published values exist) its global
minimum, so experiment code never hard-codes that information.
"""

import numpy as np

from ember import evaluate, get_function, known_minimum, list_functions, validate_registry

print("=" * 68)
print("the catalogue")
print("=" * 68)
for fn in list_functions():
    lower, upper = fn.domain
    tags = ", ".join(sorted(fn.attributes))
    print(f"{fn.name:<22} [{lower:>8.2f}, {upper:>8.2f}]  {tags}")

print()
print("=" * 68)
print("filtering by tags (every tag must match)")
print("=" * 68)
scalable = [fn.name for fn in list_functions({"scalable"})]
print(f"scalable        ({len(scalable)}): {', '.join(scalable)}")
separable = [fn.name for fn in list_functions({"separable"})]
print(f"separable       ({len(separable)}): {', '.join(separable)}")
kinked = [fn.name for fn in list_functions({"non-differentiable"})]
print(f"non-smooth      ({len(kinked)}): {', '.join(kinked)}")

print()
print("=" * 68)
print("evaluating a few points")
print("=" * 68)
print(f"sphere(1, 2)              = {evaluate('sphere', [1.0, 2.0])}")
print(f"booth(1, 3)               = {evaluate('booth', [1.0, 3.0])}  (its optimum)")
print(f"eggholder(512, 404.2319)  = {evaluate('eggholder', [512.0, 404.2319]):.6f}")
print(f"rastrigin(0 in 20 dims)   = {evaluate('rastrigin', np.zeros(20))}")

print()
print("=" * 68)
print("known minima scale with dimension where they are published")
print("=" * 68)
for name, dim in (("styblinski_tang", 2), ("styblinski_tang", 20), ("easom", 20),
                  ("michalewicz", 10)):
    value, minimizers = known_minimum(name, dim)
    if value is None:
        print(f"{name} at n={dim}: no published minimum (ranking falls back to raw fitness)")
    else:
        head = np.array2string(minimizers[0][:4], precision=4)
        print(f"{name} at n={dim}: {value:.5f} at {head}{'...' if dim > 4 else ''}")

print()
print("=" * 68)
print("the registry checks itself")
print("=" * 68)
rows = validate_registry()
failed = [row for row in rows if not row.ok]
checked = sum(1 for row in rows if row.status == "ok")
print(f"{checked} function/dimension pairs within tolerance, {len(failed)} failures")
worst = max((row for row in rows if row.residual is not None),
            key=lambda row: row.residual / row.tolerance)
print(f"worst relative residual: {worst.name} at n={worst.dimension} "
      f"({worst.residual:.2e} against {worst.tolerance:.0e})")
