"""
🔎 Regex-profile import scanner.

Turns a source tree into a DependencyGraph: one node per matched file, one
edge per import that resolves to another scanned file. Extraction is
line-regex based and best effort. Imports that do not resolve (standard
library, third-party code, typos) are dropped and counted.

A profile is a JSON object:

    {
      "name": "python",
      "file_glob": "*.py",
      "import_pattern": "^\\s*(?:from|import)\\s+([.\\w]+)",
      "package_rule": "by-directory",
      "index_stems": ["__init__"],
      "exclude_dirs": ["__pycache__"]
    }

"by-declared-namespace" profiles also need a "namespace_pattern" with one
capture group; files without a declaration land in package "_default".
"""

from __future__ import annotations

import json
import logging
import posixpath
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .errors import BadProfile, ScanIoError
from .graph import IDENTIFIER_RE, DependencyGraph, GraphBuilder

logger = logging.getLogger("depmod.scanner")

BY_DIRECTORY = "by-directory"
BY_NAMESPACE = "by-declared-namespace"
PACKAGE_RULES = (BY_DIRECTORY, BY_NAMESPACE)

ROOT_PACKAGE = "_root"
DEFAULT_NAMESPACE = "_default"
BUILTIN_PROFILES = ("python", "java", "javascript")

_UNSAFE = re.compile(r"[^A-Za-z0-9_.$-]")


def _compile(pattern, what):
    try:
        compiled = re.compile(pattern, re.MULTILINE)
    except (re.error, TypeError) as exc:
        raise BadProfile(f"{what} does not compile: {exc}") from exc
    if compiled.groups != 1:
        raise BadProfile(f"{what} must have exactly one capture group, has {compiled.groups}")
    return compiled


@dataclass(frozen=True)
class ScanProfile:
    name: str
    file_glob: str
    import_pattern: str
    package_rule: str = BY_DIRECTORY
    namespace_pattern: Optional[str] = None
    index_stems: Tuple[str, ...] = ()
    exclude_dirs: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.package_rule not in PACKAGE_RULES:
            raise BadProfile(f"package_rule must be one of {', '.join(PACKAGE_RULES)}, got {self.package_rule!r}")
        if not self.file_glob:
            raise BadProfile("file_glob must not be empty")
        _compile(self.import_pattern, "import_pattern")
        if self.package_rule == BY_NAMESPACE:
            if not self.namespace_pattern:
                raise BadProfile(f"{BY_NAMESPACE} profiles need a namespace_pattern")
            _compile(self.namespace_pattern, "namespace_pattern")

    @property
    def import_re(self):
        return _compile(self.import_pattern, "import_pattern")

    @property
    def namespace_re(self):
        if self.namespace_pattern is None:
            return None
        return _compile(self.namespace_pattern, "namespace_pattern")

    @classmethod
    def from_dict(cls, data) -> "ScanProfile":
        if not isinstance(data, dict):
            raise BadProfile("profile must be a JSON object")
        missing = [key for key in ("name", "file_glob", "import_pattern") if key not in data]
        if missing:
            raise BadProfile(f"profile is missing {', '.join(missing)}")
        return cls(
            name=data["name"],
            file_glob=data["file_glob"],
            import_pattern=data["import_pattern"],
            package_rule=data.get("package_rule", BY_DIRECTORY),
            namespace_pattern=data.get("namespace_pattern"),
            index_stems=tuple(data.get("index_stems", ())),
            exclude_dirs=tuple(data.get("exclude_dirs", ())),
        )


def load_profile(name_or_path) -> ScanProfile:
    """A shipped profile by name, or a profile JSON file."""
    path = Path(name_or_path)
    if path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise BadProfile(f"cannot read profile {path}: {exc}") from exc
    elif str(name_or_path) in BUILTIN_PROFILES:
        text = resources.files("depmod").joinpath(f"profiles/{name_or_path}.json").read_text(encoding="utf-8")
    else:
        raise BadProfile(
            f"no profile file {name_or_path!r} (shipped profiles: {', '.join(BUILTIN_PROFILES)})"
        )
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadProfile(f"profile {name_or_path} is not valid JSON: {exc}") from exc
    return ScanProfile.from_dict(data)


@dataclass
class ScanResult:
    graph: DependencyGraph
    files: int = 0
    unresolved: Dict[str, int] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    @property
    def unresolved_total(self) -> int:
        return sum(self.unresolved.values())


@dataclass
class _SourceFile:
    rel: str
    class_id: str
    package: str
    imports: List[str]


def _sanitize(part: str) -> str:
    return _UNSAFE.sub("_", part) or "_"


class SourceScanner:
    """Scans one tree with one profile; construct once per scan."""

    def __init__(self, profile: ScanProfile, max_workers: int = 8):
        self.profile = profile
        self.max_workers = max_workers
        self.import_re = profile.import_re
        self.namespace_re = profile.namespace_re

    def _class_parts(self, rel: str) -> List[str]:
        directory, filename = posixpath.split(rel)
        stem = filename.split(".", 1)[0]
        parts = [p for p in directory.split("/") if p]
        if stem not in self.profile.index_stems or not parts:
            parts.append(stem)
        return parts

    def class_id(self, rel: str) -> str:
        return ".".join(_sanitize(p) for p in self._class_parts(rel))

    def _package(self, rel: str, text: str) -> str:
        if self.profile.package_rule == BY_NAMESPACE:
            match = self.namespace_re.search(text)
            if match is None:
                return DEFAULT_NAMESPACE
            return _sanitize(match.group(1).strip())
        directory = posixpath.dirname(rel)
        if not directory:
            return ROOT_PACKAGE
        return ".".join(_sanitize(p) for p in directory.split("/"))

    def _files(self, root: Path) -> List[str]:
        found = []
        for path in root.rglob(self.profile.file_glob):
            rel = path.relative_to(root).as_posix()
            dirs = rel.split("/")[:-1]
            if any(d.startswith(".") or d in self.profile.exclude_dirs for d in dirs):
                continue
            if path.is_file():
                found.append(rel)
        return sorted(found)

    def _read(self, root: Path, rel: str):
        try:
            return rel, (root / rel).read_text(encoding="utf-8", errors="replace"), None
        except OSError as exc:
            return rel, None, str(exc)

    def _resolve(self, capture: str, source: _SourceFile, known: Dict[str, str]) -> Optional[str]:
        capture = capture.strip().strip("'\"")
        if "/" in capture:
            if not capture.startswith("."):
                return None
            base = posixpath.dirname(source.rel)
            target = posixpath.normpath(posixpath.join(base, capture))
            if target.startswith(".."):
                return None
            candidates = [self.class_id(target)]
            name = posixpath.basename(target)
            if "." in name:
                candidates.append(self.class_id(posixpath.join(posixpath.dirname(target), name.split(".", 1)[0])))
            return next((c for c in candidates if c in known), None)

        if capture.startswith("."):
            level = len(capture) - len(capture.lstrip("."))
            parts = posixpath.dirname(source.rel).split("/") if posixpath.dirname(source.rel) else []
            if level - 1 > len(parts):
                return None
            parts = parts[: len(parts) - (level - 1)]
            rest = capture.lstrip(".")
            capture = ".".join(parts + ([rest] if rest else []))
            if not capture:
                return None

        dotted = capture.rstrip(".")
        for candidate in (dotted, dotted.rpartition(".")[0]):
            if not candidate:
                continue
            if candidate in known:
                return candidate
            matches = [cid for cid in known if cid.endswith("." + candidate)]
            if len(matches) == 1:
                return matches[0]
            if len(matches) > 1:
                logger.debug("Ambiguous import %s in %s: %s", candidate, source.rel, ", ".join(sorted(matches)))
                return None
        return None

    def scan(self, root) -> ScanResult:
        root = Path(root)
        if not root.is_dir():
            raise ScanIoError(f"scan root is not a readable directory: {root}")
        try:
            files = self._files(root)
        except OSError as exc:
            raise ScanIoError(f"cannot list {root}: {exc}") from exc

        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            contents = list(pool.map(lambda rel: self._read(root, rel), files))

        warnings = []
        sources: List[_SourceFile] = []
        known: Dict[str, str] = {}
        for rel, text, error in contents:
            if text is None:
                warnings.append(f"skipped unreadable file {rel}: {error}")
                continue
            class_id = self.class_id(rel)
            if class_id in known:
                warnings.append(f"{rel} maps to class {class_id} already taken by {known[class_id]}; skipped")
                continue
            if not IDENTIFIER_RE.fullmatch(class_id):
                warnings.append(f"cannot derive a class id for {rel}; skipped")
                continue
            known[class_id] = rel
            imports = [m.group(1) for m in self.import_re.finditer(text) if m.group(1)]
            sources.append(_SourceFile(rel, class_id, self._package(rel, text), imports))

        builder = GraphBuilder()
        for source in sources:
            builder.add_node(source.class_id, source.package)

        unresolved: Counter = Counter()
        for source in sources:
            for capture in source.imports:
                target = self._resolve(capture, source, known)
                if target is None:
                    unresolved[capture] += 1
                    continue
                if target == source.class_id or builder.has_edge(source.class_id, target):
                    continue
                builder.add_edge(source.class_id, target)

        graph = builder.build()
        if unresolved:
            warnings.append(f"{sum(unresolved.values())} unresolved imports ({len(unresolved)} distinct) dropped")
        for warning in warnings:
            logger.warning(warning)
        logger.info("Scanned %d files under %s: %d nodes, %d edges", len(files), root, graph.node_count, graph.m)
        return ScanResult(graph=graph, files=len(files), unresolved=dict(sorted(unresolved.items())), warnings=warnings)


def scan_sources(root_dir, profile: ScanProfile) -> DependencyGraph:
    return SourceScanner(profile).scan(root_dir).graph
