"""Binary dump of a :class:`Rep`.

Layout (all integers little-endian)::

    magic  b"ALTSPIN\\x01"
    u32    degree
    u32    generator count
    u16    group_tag byte length, then UTF-8 bytes
    u16    label byte length, then UTF-8 bytes (0 means no label)
    gens   row-major packed uint64 words, degree * ceil(degree / 64) per generator
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from . import _kernels as K
from .bitmatrix import BitMatrix
from .module import Rep

MAGIC = b"ALTSPIN\x01"


def dumps(rep: Rep) -> bytes:
    tag = rep.group_tag.encode()
    label = (rep.label or "").encode()
    parts = [MAGIC, struct.pack("<II", rep.degree, rep.ngens),
             struct.pack("<H", len(tag)), tag, struct.pack("<H", len(label)), label]
    for g in rep.gens:
        parts.append(g.payload.astype("<u8").tobytes())
    return b"".join(parts)


def loads(blob: bytes) -> Rep:
    if blob[:8] != MAGIC:
        raise ValueError("not a representation dump")
    pos = 8
    degree, ngens = struct.unpack_from("<II", blob, pos)
    pos += 8
    (tl,) = struct.unpack_from("<H", blob, pos)
    pos += 2
    tag = blob[pos:pos + tl].decode()
    pos += tl
    (ll,) = struct.unpack_from("<H", blob, pos)
    pos += 2
    label = blob[pos:pos + ll].decode() or None
    pos += ll
    nw = K.nwords(degree)
    size = degree * nw * 8
    if len(blob) != pos + ngens * size:
        raise ValueError("truncated representation dump")
    gens = []
    for _ in range(ngens):
        words = np.frombuffer(blob, dtype="<u8", count=degree * nw, offset=pos).astype(np.uint64)
        gens.append(BitMatrix(degree, degree, words.reshape(degree, nw)))
        pos += size
    return Rep(degree, tuple(gens), tag, label)


def dump(rep: Rep, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(dumps(rep))
    tmp.replace(path)


def load(path) -> Rep:
    return loads(Path(path).read_bytes())
