# largest bar-cochain degree computed by default
NMAX_DEFAULT = 5

# guard on the number of normalized cochain cells in a single degree
MAX_TABLE_SIZE = 200_000

# z-power cap: total degrees run up to dim K + 2 * ZCAP_DEFAULT
ZCAP_DEFAULT = 3

SEED_DEFAULT = 0

# seeded random instances per property in the selftest suite
TEST_SAMPLE_COUNT = 50

# cyclic groups available as builtins
MAX_BUILTIN_CYCLIC_ORDER = 12
