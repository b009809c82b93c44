import logging
import os
import sys
from typing import List

try:
    from .formats import write_object
    from .sqs import boolean_sqs, search_sqs, sqs10_with_spread
    from .utils import DATA_DIR, DEFAULT_SEED, ensure_dir
except Exception:  # pragma: no cover
    from designlab.formats import write_object  # type: ignore
    from designlab.sqs import boolean_sqs, search_sqs, sqs10_with_spread  # type: ignore
    from designlab.utils import DATA_DIR, DEFAULT_SEED, ensure_dir  # type: ignore

logger = logging.getLogger(__name__)

# SQS(18) ve SQS(34) arama bütçesi
INGREDIENT_BUDGET = 20_000_000


def write_small_ingredients(data_dir: str = DATA_DIR, seed: int = DEFAULT_SEED) -> List[str]:
    ensure_dir(data_dir)
    paths = [
        write_object(boolean_sqs(3), os.path.join(data_dir, "sqs_8.txt")),
        write_object(sqs10_with_spread(seed), os.path.join(data_dir, "sqs_10.txt")),
    ]
    return paths


def write_d_ingredient(n: int = 16, data_dir: str = DATA_DIR, seed: int = DEFAULT_SEED,
                       budget: int = INGREDIENT_BUDGET) -> str:
    """Best-effort search for the SQS(2n+2) used by the full SQS(8n+2) build."""
    v = 2 * n + 2
    result = search_sqs(v, seed, budget)
    if not result.found:
        logger.warning(f"SQS({v}) not found within {budget} steps ({result.blocks_placed} blocks placed)")
        return ""
    return write_object(result.sqs, os.path.join(ensure_dir(data_dir), f"sqs_{v}.txt"))


def main() -> None:
    logging.basicConfig(level=logging.INFO, stream=sys.stderr)
    for path in write_small_ingredients():
        print(f"Saved: {path}")
    for n in (8, 16):
        path = write_d_ingredient(n)
        if path:
            print(f"Saved: {path}")


if __name__ == "__main__":
    main()
