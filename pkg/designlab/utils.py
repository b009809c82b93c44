import logging
import os
from typing import Any, Callable, List, Optional, Sequence, TypeVar

from joblib import Parallel, delayed, dump, load

logger = logging.getLogger(__name__)

_PACKAGE_DIR = os.path.dirname(os.path.abspath(__file__))

DATA_DIR = os.environ.get("DESIGNLAB_DATA_DIR", os.path.join(os.path.dirname(_PACKAGE_DIR), "data"))
CACHE_DIR = os.environ.get("DESIGNLAB_CACHE_DIR", os.path.join(_PACKAGE_DIR, "_cache"))
N_JOBS = int(os.environ.get("DESIGNLAB_N_JOBS", "1"))

# Alan ve tablo sınırları
FIELD_SIZE_CAP = 2 ** 20
TABLE_CAP = 256
DEFAULT_SEED = 0

T = TypeVar("T")
R = TypeVar("R")


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def safe_read_text(path: str) -> Optional[str]:
    try:
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                return fh.read()
        return None
    except OSError as exc:
        logger.warning(f"Could not read {path}: {exc}")
        return None


def save_artifact(obj: Any, name: str, cache_dir: Optional[str] = None) -> Optional[str]:
    try:
        path = os.path.join(ensure_dir(cache_dir or CACHE_DIR), f"{name}.joblib")
        dump(obj, path)
        return path
    except Exception as exc:
        logger.warning(f"Artifact {name} not cached: {exc}")
        return None


def load_artifact(name: str, cache_dir: Optional[str] = None) -> Any:
    path = os.path.join(cache_dir or CACHE_DIR, f"{name}.joblib")
    try:
        if os.path.exists(path):
            return load(path)
        return None
    except Exception as exc:
        logger.warning(f"Artifact {name} unreadable: {exc}")
        return None


def parallel_map(func: Callable[[T], R], items: Sequence[T], n_jobs: Optional[int] = None) -> List[R]:
    """Map over independent work items, threaded through joblib when n_jobs != 1."""
    jobs = N_JOBS if n_jobs is None else n_jobs
    if jobs == 1 or len(items) < 2:
        return [func(item) for item in items]
    return list(Parallel(n_jobs=jobs, prefer="threads")(delayed(func)(item) for item in items))
