"""Frozen (protocol, n, r, d) tradeoff values as exact rationals."""

GOLDEN = [
    ("direct", 1, "0", "1"),
    ("direct", 1, "1/10", "9/10"),
    ("direct", 1, "1/4", "3/4"),
    ("direct", 1, "3/10", "7/10"),
    ("direct", 1, "1/3", "2/3"),
    ("direct", 1, "1/2", "1/2"),
    ("direct", 1, "3/5", "2/5"),
    ("direct", 1, "3/4", "1/4"),
    ("direct", 1, "9/10", "1/10"),
    ("direct", 1, "1", "0"),
    ("genie_miso", 2, "0", "2"),
    ("genie_miso", 2, "1/10", "9/5"),
    ("genie_miso", 2, "1/4", "3/2"),
    ("genie_miso", 2, "3/10", "7/5"),
    ("genie_miso", 2, "1/3", "4/3"),
    ("genie_miso", 2, "1/2", "1"),
    ("genie_miso", 2, "3/5", "4/5"),
    ("genie_miso", 2, "3/4", "1/2"),
    ("genie_miso", 2, "9/10", "1/5"),
    ("genie_miso", 2, "1", "0"),
    ("genie_miso", 4, "0", "4"),
    ("genie_miso", 4, "1/10", "18/5"),
    ("genie_miso", 4, "1/4", "3"),
    ("genie_miso", 4, "3/10", "14/5"),
    ("genie_miso", 4, "1/3", "8/3"),
    ("genie_miso", 4, "1/2", "2"),
    ("genie_miso", 4, "3/5", "8/5"),
    ("genie_miso", 4, "3/4", "1"),
    ("genie_miso", 4, "9/10", "2/5"),
    ("genie_miso", 4, "1", "0"),
    ("naf", 2, "0", "2"),
    ("naf", 2, "1/10", "17/10"),
    ("naf", 2, "1/4", "5/4"),
    ("naf", 2, "3/10", "11/10"),
    ("naf", 2, "1/3", "1"),
    ("naf", 2, "1/2", "1/2"),
    ("naf", 2, "3/5", "2/5"),
    ("naf", 2, "3/4", "1/4"),
    ("naf", 2, "9/10", "1/10"),
    ("naf", 2, "1", "0"),
    ("naf_multi", 3, "0", "3"),
    ("naf_multi", 3, "1/10", "5/2"),
    ("naf_multi", 3, "1/4", "7/4"),
    ("naf_multi", 3, "3/10", "3/2"),
    ("naf_multi", 3, "1/3", "4/3"),
    ("naf_multi", 3, "1/2", "1/2"),
    ("naf_multi", 3, "3/5", "2/5"),
    ("naf_multi", 3, "3/4", "1/4"),
    ("naf_multi", 3, "9/10", "1/10"),
    ("naf_multi", 3, "1", "0"),
    ("naf_multi", 5, "0", "5"),
    ("naf_multi", 5, "1/10", "41/10"),
    ("naf_multi", 5, "1/4", "11/4"),
    ("naf_multi", 5, "3/10", "23/10"),
    ("naf_multi", 5, "1/3", "2"),
    ("naf_multi", 5, "1/2", "1/2"),
    ("naf_multi", 5, "3/5", "2/5"),
    ("naf_multi", 5, "3/4", "1/4"),
    ("naf_multi", 5, "9/10", "1/10"),
    ("naf_multi", 5, "1", "0"),
    ("ddf", 2, "0", "2"),
    ("ddf", 2, "1/10", "9/5"),
    ("ddf", 2, "1/4", "3/2"),
    ("ddf", 2, "3/10", "7/5"),
    ("ddf", 2, "1/3", "4/3"),
    ("ddf", 2, "1/2", "1"),
    ("ddf", 2, "3/5", "2/3"),
    ("ddf", 2, "3/4", "1/3"),
    ("ddf", 2, "9/10", "1/9"),
    ("ddf", 2, "1", "0"),
    ("ddf_multi", 3, "0", "3"),
    ("ddf_multi", 3, "1/10", "27/10"),
    ("ddf_multi", 3, "1/4", "9/4"),
    ("ddf_multi", 3, "3/10", "21/10"),
    ("ddf_multi", 3, "1/3", "2"),
    ("ddf_multi", 3, "1/2", "1"),
    ("ddf_multi", 3, "3/5", "2/3"),
    ("ddf_multi", 3, "3/4", "1/3"),
    ("ddf_multi", 3, "9/10", "1/9"),
    ("ddf_multi", 3, "1", "0"),
    ("ddf_multi", 5, "0", "5"),
    ("ddf_multi", 5, "1/10", "9/2"),
    ("ddf_multi", 5, "1/4", "11/3"),
    ("ddf_multi", 5, "3/10", "23/7"),
    ("ddf_multi", 5, "1/3", "3"),
    ("ddf_multi", 5, "1/2", "1"),
    ("ddf_multi", 5, "3/5", "2/3"),
    ("ddf_multi", 5, "3/4", "1/3"),
    ("ddf_multi", 5, "9/10", "1/9"),
    ("ddf_multi", 5, "1", "0"),
    ("cb_ddf", 4, "0", "4"),
    ("cb_ddf", 4, "1/10", "18/5"),
    ("cb_ddf", 4, "1/4", "3"),
    ("cb_ddf", 4, "3/10", "19/7"),
    ("cb_ddf", 4, "1/3", "5/2"),
    ("cb_ddf", 4, "1/2", "1"),
    ("cb_ddf", 4, "3/5", "2/3"),
    ("cb_ddf", 4, "3/4", "1/3"),
    ("cb_ddf", 4, "9/10", "1/9"),
    ("cb_ddf", 4, "1", "0"),
    ("cma_naf", 3, "0", "3"),
    ("cma_naf", 3, "1/10", "27/10"),
    ("cma_naf", 3, "1/4", "9/4"),
    ("cma_naf", 3, "3/10", "21/10"),
    ("cma_naf", 3, "1/3", "2"),
    ("cma_naf", 3, "1/2", "3/2"),
    ("cma_naf", 3, "3/5", "6/5"),
    ("cma_naf", 3, "3/4", "3/4"),
    ("cma_naf", 3, "9/10", "3/10"),
    ("cma_naf", 3, "1", "0"),
    ("ltw_df", 2, "0", "2"),
    ("ltw_df", 2, "1/10", "8/5"),
    ("ltw_df", 2, "1/4", "1"),
    ("ltw_df", 2, "3/10", "4/5"),
    ("ltw_df", 2, "1/3", "2/3"),
    ("ltw_df", 2, "1/2", "0"),
    ("ltw_df", 2, "3/5", "0"),
    ("ltw_df", 2, "3/4", "0"),
    ("ltw_df", 2, "9/10", "0"),
    ("ltw_df", 2, "1", "0"),
]
