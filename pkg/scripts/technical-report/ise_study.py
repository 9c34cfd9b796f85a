import logging

import bcdf as bc

logging.basicConfig(level=logging.INFO)

for n in (50, 100, 200):
    config = bc.SimConfig(
        dist=bc.distributions.solve_params(1.5, 6.0),
        n=n,
        reps=500,
        seed=20140101,
        base=bc.BaseKernel('epanechnikov'),
    )
    result = bc.simulation.run_ise(config, threads=4)
    result.to_frame().to_csv(f'ise_n{n}.csv', index=False)
    summary = bc.simulation.summarize(result)
    summary.to_csv(f'ise_n{n}_summary.csv', index=False)
    print(summary)
