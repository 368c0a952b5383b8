"""JSON file formats, DIMACS export, and run manifests."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence

from hypercolor import __version__, geometry
from hypercolor.errors import InputError
from hypercolor.geomfam import GonSet
from hypercolor.hypergraph import Coloring, Hypergraph, from_mapping, to_mapping


def dumps(obj: Mapping[str, Any]) -> str:
    """Deterministic JSON: one top-level key per line, compact values."""
    lines = [f"  {json.dumps(k)}: {json.dumps(v, separators=(',', ':'), sort_keys=True)}" for k, v in obj.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def write_json(path: str | Path, obj: Mapping[str, Any]) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(dumps(obj))
    return p


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def schema(name: str) -> dict:
    """A shipped JSON schema by name (``hypergraph``, ``coloring``, ...)."""
    text = resources.files("hypercolor").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


# -- point sets ------------------------------------------------------------

def pointset_to_mapping(points: Sequence[Sequence[float]]) -> dict:
    pts = geometry.as_points(points)
    return {"d": len(pts[0]) if pts else None, "points": [list(p) for p in pts]}


def pointset_from_mapping(data: Mapping) -> tuple[geometry.Point, ...]:
    if "points" not in data:
        raise InputError("point-set file needs a 'points' key")
    pts = geometry.as_points(data["points"])
    d = data.get("d")
    if d is not None and pts and len(pts[0]) != d:
        raise InputError(f"points have dimension {len(pts[0])}, file says d = {d}")
    return pts


def read_pointset(path: str | Path) -> tuple[geometry.Point, ...]:
    data = read_json(path)
    # a hypergraph file doubles as a point set through its embedding
    if "points" not in data and data.get("vertices") is not None:
        return geometry.as_points(data["vertices"])
    return pointset_from_mapping(data)


def write_pointset(path: str | Path, points: Sequence[Sequence[float]]) -> Path:
    return write_json(path, pointset_to_mapping(points))


# -- hypergraphs -----------------------------------------------------------

def hypergraph_to_mapping(H: Hypergraph) -> dict:
    out = to_mapping(H)
    out["n"] = H.n
    return out


def read_hypergraph(path: str | Path) -> Hypergraph:
    data = read_json(path)
    if not isinstance(data, dict) or "edges" not in data:
        raise InputError(f"{path}: hypergraph file needs an 'edges' key")
    return from_mapping(data, data.get("n"))


def write_hypergraph(path: str | Path, H: Hypergraph) -> Path:
    return write_json(path, hypergraph_to_mapping(H))


def dimacs(H: Hypergraph) -> str:
    """DIMACS-style hypergraph text: 1-based vertices, coordinates dropped."""
    lines = [f"p hypergraph {H.n} {len(H.edges)}"]
    lines += ["e " + " ".join(str(v + 1) for v in e) for e in H.edges]
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Hypergraph:
    n = None
    edges = []
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            n = int(parts[2])
        elif parts[0] == "e":
            edges.append(tuple(int(v) - 1 for v in parts[1:]))
        else:
            raise InputError(f"unrecognised DIMACS line {raw!r}")
    if n is None:
        raise InputError("DIMACS text has no problem line")
    return Hypergraph.from_edges(n, edges)


# -- colorings -------------------------------------------------------------

def coloring_to_mapping(phi: Coloring) -> dict:
    return {"m": phi.m, "colors": list(phi.colors)}


def read_coloring(path: str | Path) -> Coloring:
    data = read_json(path)
    try:
        return Coloring(tuple(data["colors"]), int(data["m"]))
    except (KeyError, TypeError):
        raise InputError(f"{path}: coloring file needs 'm' and 'colors'") from None


def write_coloring(path: str | Path, phi: Coloring) -> Path:
    return write_json(path, coloring_to_mapping(phi))


# -- gon sets --------------------------------------------------------------

def gonset_to_mapping(M: GonSet) -> dict:
    return {"d": M.d, "m": M.m, "gons": [[list(p) for p in g] for g in M.gons]}


def gonset_from_mapping(data: Mapping) -> GonSet:
    try:
        M = GonSet.of(data["gons"], m=data.get("m"), d=data.get("d"))
    except KeyError:
        raise InputError("gon-set file needs a 'gons' key") from None
    if data.get("m") is not None and M.m != data["m"]:
        raise InputError(f"gons have {M.m} points, file says m = {data['m']}")
    if data.get("d") is not None and M.d != data["d"]:
        raise InputError(f"gons have dimension {M.d}, file says d = {data['d']}")
    return M


def read_gonset(path: str | Path) -> GonSet:
    return gonset_from_mapping(read_json(path))


def write_gonset(path: str | Path, M: GonSet) -> Path:
    return write_json(path, gonset_to_mapping(M))


# -- manifests -------------------------------------------------------------

def sha256(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def build_manifest(
    command: Sequence[str],
    inputs: Sequence[str | Path],
    outputs: Sequence[str | Path],
    *,
    seed: int | None = None,
    solver: Mapping | None = None,
    verdicts: Mapping | None = None,
    extra: Mapping | None = None,
    timing: Mapping | None = None,
    relative_to: Path | None = None,
) -> dict:
    """Run record. Everything that varies between identical runs (clock
    time, wall seconds) lives under ``timing`` only."""

    def key(p: str | Path) -> str:
        p = Path(p)
        if relative_to is not None:
            try:
                return str(p.resolve().relative_to(relative_to.resolve()))
            except ValueError:
                pass
        return str(p)

    out = {
        "tool": "hypercolor",
        "version": __version__,
        "command": list(command),
        "seed": seed,
        "inputs": {key(p): sha256(p) for p in inputs},
        "outputs": {key(p): sha256(p) for p in outputs},
        "solver": dict(solver or {}),
        "verdicts": dict(verdicts or {}),
    }
    if extra:
        out.update(extra)
    out["timing"] = dict(timing or {})
    return out


def check_manifest(manifest: Mapping, base: Path) -> list[str]:
    """Problems with the listed outputs (missing files or digest drift)."""
    problems = []
    for name, digest in manifest.get("outputs", {}).items():
        p = Path(name) if Path(name).is_absolute() else base / name
        if not p.exists():
            problems.append(f"missing output {name}")
        elif sha256(p) != digest:
            problems.append(f"digest mismatch for {name}")
    return problems
