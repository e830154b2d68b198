"""bayesrec: online Bayesian recommendation policies, oracles and benchmark harness."""
