import pandas as pd
import bcdf as bc

n = 50
dist = bc.BetaMixture(w=0.0, shape_b=2.0)
base = bc.BaseKernel('epanechnikov')
terms = bc.analysis.mise_terms(dist, base, n)
print(f'h0={terms.h0}, delta(K)={terms.delta_k}, roughness={terms.roughness}')

rows = []
for variant in (None, 'k1', 'k2', 'k3'):
    for h in (0.2, 0.1, 0.05, 0.025):
        cfg = bc.EstimatorConfig.from_names(0.0, 1.0, h, 'epanechnikov', variant)
        exact = bc.analysis.exact_mise_decomposition(dist, cfg, n)
        rows.append(
            {
                'family': cfg.label,
                'h': h,
                'exact_variance': exact.integrated_variance,
                'leading_variance': terms.leading_variance(h),
                'exact_sq_bias': exact.integrated_sq_bias,
                'leading_sq_bias': terms.leading_sq_bias(h),
            }
        )

pd.DataFrame(rows).to_csv('mise_expansion.csv', index=False)
