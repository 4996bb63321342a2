"""Stable seed derivation"""

import hashlib


def derive_seed(*parts) -> int:
    """Derive a 63-bit seed from the given parts.

    Uses SHA-256 over the '|'-joined string forms, so the result does not
    depend on PYTHONHASHSEED, process or worker count.
    """
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little") & ((1 << 63) - 1)
