import hashlib
import json
from pathlib import Path

import numpy as np

FIXTURES = Path(__file__).parent / "fixtures"


def load_golden(q: int) -> dict:
    """Printed fusion matrices for R_q; checksum verified on every load."""
    data = json.loads((FIXTURES / f"R{q}.json").read_text())
    compact = json.dumps(data["N"], separators=(",", ":"))
    if hashlib.sha256(compact.encode()).hexdigest() != data["sha256"]:
        raise AssertionError(f"fixture R{q}.json does not match its checksum")
    data["N"] = np.array(data["N"], dtype=np.int64)
    return data
