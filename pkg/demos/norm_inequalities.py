# Spot-check the inequality lemmas behind the total-variation bound.
#
# Each lemma is tested on random matrices; the reported margin is the
# smallest observed slack (negative would mean a counterexample).

from liemeasure.verify import (
    lemma_entry_sum_dominates_norm,
    lemma_exp_monotone,
    lemma_majorant_dominates,
    lemma_partition_product_bound,
    lemma_sum_product_closure,
    run_lemma,
)

LEMMAS = (
    lemma_entry_sum_dominates_norm,
    lemma_majorant_dominates,
    lemma_sum_product_closure,
    lemma_exp_monotone,
    lemma_partition_product_bound,
)

for fn in LEMMAS:
    res = run_lemma(fn, trials=300, seed=7, max_dim=5)
    status = "ok" if res.passed else "FAILED"
    print(f"{status:6} {res.name:32} worst margin {res.worst_margin:.3e}")
