import hashlib
import json
import logging
from pathlib import Path
from time import perf_counter
from typing import Any, Iterator, List, Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)

SEED_MODULUS = 2**64


def compositions(total: int, parts: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Generate the compositions of `total` in lexicographic order.

    Args:
        total (int): The number being split, at least 1.
        parts (Optional[int]): Only compositions with exactly this many parts.

    Returns:
        Iterator[Tuple[int, ...]]: Tuples of positive integers summing to `total`.
    """
    if total == 0:
        if parts in (None, 0):
            yield ()
        return
    if parts == 0:
        return
    for first in range(1, total + 1):
        rest_parts = None if parts is None else parts - 1
        for rest in compositions(total - first, rest_parts):
            yield (first,) + rest


def verdict_rng(seed: int, verdict_id: str) -> np.random.Generator:
    """Random stream for one verdict, fixed by the run seed and the verdict id.

    Args:
        seed (int): Run seed given on the command line.
        verdict_id (str): Stable name of the verdict, e.g. "irr:n=4;steps=1,3:squarefree:a=2".

    Returns:
        np.random.Generator: Independent generator; identical inputs give identical draws.
    """
    digest = hashlib.sha256(verdict_id.encode("utf-8")).digest()
    words = [int.from_bytes(digest[k:k + 4], "little") for k in range(0, len(digest), 4)]
    return np.random.default_rng(np.random.SeedSequence([seed % SEED_MODULUS] + words))


def sample_integers(rng: np.random.Generator, bound: int, count: int) -> List[int]:
    """Draw `count` integers uniformly from [-bound, bound] as Python ints."""
    values = rng.integers(-bound, bound, size=count, endpoint=True)
    return [int(v) for v in values]


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2)


def write_output(text: str, out: Optional[str] = None) -> None:
    """Print `text` or write it to `out`, always ending with a newline."""
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        print(text, end="")
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info("Wrote %d bytes to %s", len(text), out)


def log_duration(step: str, start_ts: float) -> None:
    logger.info(f"{step} took {perf_counter() - start_ts:.3f} sec.")
