"""On-disk memoization of completed rewrite systems.

Completion is deterministic given (presentation, max_len, max_index), but for
deep word bounds it is by far the most expensive step of the whole harness —
tens of minutes at bound 14+ for the q-Onsager presentation.  The package
therefore ships snapshots of the completions it needs (produced by this very
engine; see ``qonsager.cli compute rules``) and reloads them keyed by a hash
of the presentation content and the bounds, so a stale or mismatched snapshot
can never be picked up.

Loading is opt-out (set QONSAGER_NO_CACHE=1 to force recomputation) and the
loader rechecks every rule's orientation invariant; the derivation
certificates stored with the rules can be replayed in full with
``RewriteSystem.verify_certificates`` (the engine-integrity suite does this
for small bounds on every run).
"""

import gzip
import hashlib
import json
import os

from . import rewrite

# bump when the completion strategy changes in a way that invalidates dumps
ENGINE_TAG = "rules-v1"


def cache_key(pres, max_len, max_index=None):
    blob = json.dumps(
        {"tag": ENGINE_TAG, "max_len": max_len, "max_index": max_index,
         "presentation": rewrite.presentation_state(pres)},
        sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _data_dir():
    return os.path.join(os.path.dirname(__file__), "data")


def search_dirs():
    dirs = []
    env = os.environ.get("QONSAGER_RULES_DIR")
    if env:
        dirs.append(env)
    dirs.append(_data_dir())
    return dirs


def _path_for(key, directory):
    return os.path.join(directory, f"rules-{key}.json.gz")


def load(pres, max_len, max_index=None):
    """Return a cached RewriteSystem, or None when no usable snapshot exists."""
    if os.environ.get("QONSAGER_NO_CACHE"):
        return None
    key = cache_key(pres, max_len, max_index)
    for d in search_dirs():
        path = _path_for(key, d)
        if not os.path.exists(path):
            continue
        try:
            with gzip.open(path, "rt", encoding="ascii") as fh:
                state = json.load(fh)
            return rewrite.load_state(state, pres)
        except (OSError, ValueError, KeyError) as exc:  # corrupt => recompute
            import warnings
            warnings.warn(f"ignoring rule snapshot {path}: {exc}")
    return None


def store(rs, directory=None):
    """Write a snapshot next to the package data (or into ``directory``)."""
    directory = directory or os.environ.get("QONSAGER_RULES_DIR") or _data_dir()
    os.makedirs(directory, exist_ok=True)
    key = cache_key(rs.pres, rs.max_len, rs.max_index)
    path = _path_for(key, directory)
    tmp = path + ".tmp"
    with gzip.open(tmp, "wt", encoding="ascii") as fh:
        json.dump(rs.dump_state(), fh, separators=(",", ":"))
    os.replace(tmp, path)
    return path


def completed(pres, max_len, max_index=None, save=False):
    """Cache-aware wrapper around :func:`rewrite.complete`."""
    rs = load(pres, max_len, max_index)
    if rs is not None:
        return rs
    rs = rewrite.complete(pres, max_len, max_index=max_index)
    if save or os.environ.get("QONSAGER_SAVE_RULES"):
        store(rs)
    return rs
