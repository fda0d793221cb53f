from __future__ import annotations

import hashlib
import hmac
from typing import Iterable, List, Optional, Union


class HashService:
    """
    Minimal global hashing utility for report digests.

    - normalize_chunk(c): bytes as-is, strings UTF-8 encoded, None as empty
    - compute(chunks): SHA-256 hex digest over the chunks joined by b'|'
    - compare_raw_to_hash(expected_hash, chunks): constant-time compare

    A single str or bytes value is treated as [value]. Unlike free-text
    hashing nothing is trimmed or lowercased: rendered reports are already
    canonical and case matters in numbers such as 1e-10.
    """

    @staticmethod
    def normalize_chunk(chunk: Optional[Union[str, bytes]]) -> bytes:
        if chunk is None:
            return b""
        if isinstance(chunk, bytes):
            return chunk
        return chunk.encode("utf-8")

    @classmethod
    def compute(cls, chunks: Union[str, bytes, Iterable[Union[str, bytes]]]) -> str:
        """Compute SHA-256 over the chunks joined by '|'."""
        if isinstance(chunks, (str, bytes)):
            chunks = [chunks]
        normalized: List[bytes] = [cls.normalize_chunk(c) for c in chunks]
        return hashlib.sha256(b"|".join(normalized)).hexdigest()

    @classmethod
    def compare_raw_to_hash(
        cls, expected_hash: str, chunks: Union[str, bytes, Iterable[Union[str, bytes]]]
    ) -> bool:
        """Compute SHA-256 and compare in constant time."""
        actual = cls.compute(chunks)
        return hmac.compare_digest(actual, expected_hash)
