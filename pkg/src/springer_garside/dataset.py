"""Line-oriented text persistence for Springer groupoid datasets.

A file starts with ``key value`` header lines followed by sections
``[name] count`` whose bodies hold one record per line.  Loading rebuilds the
interval lattice from the stored permutations and re-derives the groupoid, so
every stored table is cross-checked against a fresh computation.
"""

from __future__ import annotations

import gzip
import hashlib
import io
from pathlib import Path

import numpy as np

from .reflection import GroupElement, IntervalLattice, build_root_system
from .springer import GroupoidData, RegularParams, build_local_lattice

FORMAT_VERSION = 1
MAGIC = "# springer-garside dataset"
SECTIONS = ("roots", "elements", "lengths", "objects", "simples", "relations", "atoms")


class DatasetError(Exception):
    """Base class for load failures."""


class VersionError(DatasetError):
    pass


class CountError(DatasetError):
    pass


class FingerprintError(DatasetError):
    pass


class ContentError(DatasetError):
    """Stored tables disagree with the re-derived groupoid."""


def fingerprint(images: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(images, dtype="<i2").tobytes()).hexdigest()


def _open(path: Path, mode: str):
    if path.suffix == ".gz":
        return gzip.open(path, mode + "t", encoding="utf-8")
    return open(path, mode, encoding="utf-8")


def _rows(arr: np.ndarray) -> str:
    buf = io.StringIO()
    np.savetxt(buf, arr, fmt="%d")
    return buf.getvalue()


def tables(data: GroupoidData) -> dict[str, np.ndarray]:
    """The persisted tables, as integer arrays."""
    L = data.lattice
    n = data.n_simples
    return {
        "roots": np.asarray(L.system.roots, dtype=np.int64),
        "elements": np.stack([e.perm for e in L.elements]).astype(np.int16),
        "lengths": np.asarray(L.length_of, dtype=np.int64).reshape(-1, 1),
        "objects": np.asarray(data.objects, dtype=np.int64).reshape(-1, 1),
        "simples": np.array([[data.a[s], data.b[s], data.src[s], data.tgt[s]] for s in range(n)], dtype=np.int64),
        "relations": np.array(data.relations(), dtype=np.int64).reshape(-1, 3),
        "atoms": np.array([[k, s] for k, atoms in enumerate(data.atoms_of) for s in atoms], dtype=np.int64).reshape(-1, 2),
    }


def save(data: GroupoidData, path: str | Path) -> None:
    path = Path(path)
    t = tables(data)
    p = data.params
    header = {
        "version": FORMAT_VERSION,
        "type": data.lattice.system.type_label,
        "d": p.d,
        "h": p.h,
        "p": p.p,
        "q": p.q,
        "eta": p.eta,
        "objects": data.n_objects,
        "simples": data.n_simples,
        "relations": data.n_relations(),
        "fingerprint": fingerprint(t["elements"]),
    }
    with _open(path, "w") as fh:
        fh.write(MAGIC + "\n")
        for k, v in header.items():
            fh.write(f"{k} {v}\n")
        for name in SECTIONS:
            fh.write(f"[{name}] {len(t[name])}\n")
            fh.write(_rows(t[name]))


def _parse(text: str) -> tuple[dict[str, str], dict[str, tuple[int, str, int]]]:
    lines = text.split("\n")
    if not lines or lines[0].strip() != MAGIC:
        raise DatasetError("not a springer-garside dataset")
    header: dict[str, str] = {}
    i = 1
    while i < len(lines) and not lines[i].startswith("["):
        if lines[i].strip():
            key, _, value = lines[i].partition(" ")
            header[key] = value.strip()
        i += 1
    sections: dict[str, tuple[int, str, int]] = {}
    while i < len(lines):
        line = lines[i]
        if not line.strip():
            i += 1
            continue
        if not line.startswith("["):
            raise DatasetError(f"unexpected line {i + 1}: {line[:40]!r}")
        name, _, count = line[1:].partition("] ")
        j = i + 1
        while j < len(lines) and not lines[j].startswith("["):
            j += 1
        body = [ln for ln in lines[i + 1 : j] if ln.strip()]
        if not count.strip().isdigit():
            raise CountError(f"section header on line {i + 1} has no row count")
        sections[name] = (int(count), "\n".join(body), len(body))
        i = j
    return header, sections


def _array(sections, name: str, width: int | None) -> np.ndarray:
    if name not in sections:
        raise CountError(f"section [{name}] is missing")
    count, body, n_lines = sections[name]
    if n_lines != count:
        raise CountError(f"section [{name}] records {count} rows but holds {n_lines}")
    try:
        flat = np.array(body.split(), dtype=np.int64)
    except ValueError as exc:
        raise DatasetError(f"section [{name}] holds a non-integer token") from exc
    if count == 0:
        return flat.reshape(0, width or 0)
    if flat.size % count:
        raise CountError(f"section [{name}] has ragged rows")
    arr = flat.reshape(count, -1)
    if width is not None and arr.shape[1] != width:
        raise CountError(f"section [{name}] rows have {arr.shape[1]} fields, expected {width}")
    return arr


def load(path: str | Path) -> GroupoidData:
    path = Path(path)
    with _open(path, "r") as fh:
        text = fh.read()
    header, sections = _parse(text)
    version = header.get("version", "missing")
    if version != str(FORMAT_VERSION):
        raise VersionError(f"unsupported format version {version} (this reader handles {FORMAT_VERSION})")

    try:
        system = build_root_system(header["type"])
    except (KeyError, ValueError) as exc:
        raise DatasetError(f"bad group type in header: {exc}") from exc
    roots = _array(sections, "roots", system.dim)
    images = _array(sections, "elements", len(system.roots)).astype(np.int16)
    lengths = _array(sections, "lengths", 1)[:, 0]
    objects = _array(sections, "objects", 1)[:, 0]
    simples = _array(sections, "simples", 4)
    relations = _array(sections, "relations", 3)
    atoms = _array(sections, "atoms", 2)
    for key, arr in (("objects", objects), ("simples", simples), ("relations", relations)):
        if header.get(key) != str(len(arr)):
            raise CountError(f"header records {header.get(key)} {key}, section holds {len(arr)}")
    if len(lengths) != len(images):
        raise CountError("lengths and elements sections differ in size")
    if fingerprint(images) != header.get("fingerprint"):
        raise FingerprintError("element order does not match the recorded fingerprint")
    if not np.array_equal(roots, system.roots):
        raise ContentError("root section differs from the rebuilt root system")

    elements = [GroupElement(row.copy(), int(n)) for row, n in zip(images, lengths)]
    lattice = IntervalLattice(system, system.coxeter_element, elements, [int(n) for n in lengths])
    if lattice.elements[-1] != lattice.coxeter:
        raise ContentError("last interval element is not the Coxeter element")
    try:
        params = RegularParams(*(int(header[k]) for k in ("d", "h", "p", "q", "eta")))
    except (KeyError, ValueError) as exc:
        raise DatasetError(f"bad regular-degree header: {exc}") from exc
    cq = lattice.coxeter ** params.q

    def fixed(e: int) -> bool:
        x = lattice.elements[e]
        return x.conj(cq) == x

    objs = [int(u) for u in objects]
    data = GroupoidData(lattice, params, objs, [build_local_lattice(lattice, u, fixed) for u in objs])
    fresh = tables(data)
    for name, stored in (("simples", simples), ("relations", relations), ("atoms", atoms)):
        if not np.array_equal(fresh[name], stored):
            raise ContentError(f"section [{name}] disagrees with the rebuilt groupoid")
    return data
