import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _int_list(value: str) -> list[int]:
    return [int(item) for item in value.replace(' ', '').split(',') if item]


# Cache settings
CACHE_DIR = os.getenv('ROOTHALL_CACHE_DIR', '.roothall_cache')

# Counting settings
DEFAULT_PRIMES = _int_list(os.getenv('ROOTHALL_PRIMES', '2,3,5,7,11,13,17,19,23,29,31,37'))
ENUMERATION_BUDGET = int(os.getenv('ROOTHALL_ENUM_BUDGET', '1048576'))
RANDOM_TRIALS = int(os.getenv('ROOTHALL_RANDOM_TRIALS', '32'))
ENDOMORPHISM_BUDGET = int(os.getenv('ROOTHALL_END_BUDGET', '262144'))
RANDOM_SEED = int(os.getenv('ROOTHALL_SEED', '20240229'))
MAX_PRIME = 251

# Tame layer
TAME_HEIGHT_BOUND = int(os.getenv('ROOTHALL_TAME_BOUND', '2'))
EPSILON_CONVENTION = os.getenv('ROOTHALL_EPSILON', 'euler')

# Worker pool
MAX_WORKERS = int(os.getenv('ROOTHALL_MAX_WORKERS', '4'))
MEMORY_LIMIT_MB = int(os.getenv('ROOTHALL_MEMORY_LIMIT_MB', '1024'))

# Logging
LOG_LEVEL = os.getenv('ROOTHALL_LOG_LEVEL', 'INFO')
LOG_FILE = os.getenv('ROOTHALL_LOG_FILE', 'roothall.log')
