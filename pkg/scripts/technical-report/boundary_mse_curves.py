import logging

import numpy as np
import pandas as pd
import bcdf as bc

logging.basicConfig(level=logging.INFO)

n = 50
alphas = np.arange(1, 100) / 100
base = bc.BaseKernel('epanechnikov')

rows = []
for mixture in bc.distributions.reference_mixtures():
    h0 = bc.analysis.optimal_bandwidth(mixture, base, n)
    for variant in ('k1', 'k2', 'k3'):
        cfg = bc.EstimatorConfig(a=0.0, b=1.0, h=h0, base=base, family=bc.BoundaryKernelFamily(variant, base))
        for alpha, record in zip(alphas, bc.analysis.exact_mse_curve(mixture, cfg, n, alphas)):
            rows.append(
                {
                    'd1_at_0': mixture.d1_at_0,
                    'd2_at_0': mixture.d2_at_0,
                    'family': variant,
                    'alpha': alpha,
                    'bias': record.bias,
                    'variance': record.variance,
                    'mse': record.mse,
                }
            )

curves = pd.DataFrame(rows)
curves.to_csv('boundary_mse_curves.csv', index=False)
print(curves.groupby(['d1_at_0', 'd2_at_0', 'family'])['mse'].mean().unstack('family'))
