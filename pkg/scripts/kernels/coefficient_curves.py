import numpy as np
import pandas as pd
import bcdf as bc


alphas = np.arange(1, 100) / 100
base = bc.BaseKernel('epanechnikov')
families = [bc.BoundaryKernelFamily(variant, base) for variant in ('k1', 'k2', 'k3')]

tables = [family.coefficient_table(alphas) for family in families]
pd.concat(tables, ignore_index=True).to_csv('coefficient_curves.csv', index=False)

shapes = [family.kernel_table(0.5, np.linspace(-1, 1, 201)) for family in families]
pd.concat(shapes, ignore_index=True).to_csv('kernel_shapes.csv', index=False)
