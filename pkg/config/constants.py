import os

# Root generation stops with NonFiniteType once this many roots exist (E8 has 240).
ROOT_CAP = int(os.environ.get("VERMA_ROOT_CAP", "500"))
# Groups larger than this are never enumerated element by element.
MAX_GROUP_ORDER = int(os.environ.get("VERMA_MAX_GROUP_ORDER", "1000000"))
FLAG_BUDGET = int(os.environ.get("VERMA_FLAG_BUDGET", "10000000"))
DEFAULT_THREADS = int(os.environ.get("VERMA_THREADS", "1"))
LOG_LEVEL = os.environ.get("VERMA_LOG_LEVEL", "WARNING")

SUPPORTED_PRIMES = (2, 3, 5, 7)
ORACLE_PRIMES = (2, 3, 5)
LARGE_ORACLE_PRIMES = (2,)
INTERPOLATION_PRIMES = (2, 3, 5, 7)
MIN_FLAG_DIMENSION = 2
MAX_FLAG_DIMENSION = 4

VERIFY_GROUPS = ("A1", "A2", "A3", "B2", "B3", "G2")
SUITES = (
    "observation1",
    "basecor",
    "descent",
    "r-identities",
    "ext-identities",
    "hom",
    "flag-oracle",
)
OPERATIONS = ("ext1", "rpoly", "hom", "bruhat", "count-flags")
FORMATS = ("text", "json", "csv")

IDENTITY_TOKEN = "e"
PERMUTATION_PREFIX = "p:"

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
