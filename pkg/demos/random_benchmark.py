"""
Random instances with a planted GCD plus noise of norm 0.1, solved by
both iterations.  Instance i of seed s is reproducible on its own.
"""

import time

import numpy as np

from gpgcd import SolverConfig, gpgcd
from gpgcd.testgen import RandomGcdSpec, random_suite

COUNT = 100

for field in ('real', 'complex'):
    print(field)
    for m, n, d in [(10, 10, 5), (20, 20, 10), (40, 40, 20)]:
        suite = random_suite(RandomGcdSpec(m, n, d, seed=1, field=field), COUNT)
        for method in ('modified_newton', 'gradient_projection'):
            cfg = SolverConfig(method=method)
            t = time.perf_counter()
            runs = [gpgcd(F, G, d, cfg=cfg) for F, G, _ in suite]
            t = (time.perf_counter() - t) / COUNT
            pert = np.mean([r.perturbation for r in runs])
            its = np.mean([r.iterations for r in runs])
            ok = sum(r.converged for r in runs)
            print(f'  ({m},{n},{d}) {method:20s} perturbation {pert:.3e}  '
                  f'iterations {its:5.2f}  converged {ok:3d}/{COUNT}  {t * 1e3:7.2f} ms/instance')
