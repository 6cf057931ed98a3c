"""
Reproducible verification campaigns
===================================

"""

import io

from kemperman.campaign import Campaign, run_campaign

# exhaustive: every pair of subspaces of GF(8)
summary = run_campaign(Campaign("linear", "kneser-linear", "gf:2:3", exhaustive=True))
print(summary.to_dict())

# random: instances are keyed by (seed, index), so reruns and worker counts agree
c = Campaign("linear", "transform", "gf:2:6", trials=50, seed=1, dims=((1, 3), (1, 3)))
first, second = io.StringIO(), io.StringIO()
run_campaign(c, first)
run_campaign(Campaign(**{**c.__dict__, "jobs": 2}), second)
print("identical streams:", first.getvalue() == second.getvalue())
print(first.getvalue().splitlines()[0])

# the same through the command line:
#   kemperman verify --ambient gf:2:6 --theorem transform --trials 50 --seed 1 --dims 1-3,1-3
