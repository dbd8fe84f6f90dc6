"""cubecert: blowup, height and branched-cover verification for tripartite
complexes.

Thin dict-level wrappers over the compiled ``_core`` module, which speaks
JSON strings.  Every function here takes and returns plain Python values;
complexes are dicts shaped like ``{"maximal_faces": [["x", "y"], ...]}``
with optional ``"parts"`` and ``"extra_vertices"`` keys, exactly the file
format the command-line tool reads.
"""

import json as _json

try:
    from . import _core as _core  # installed layout: cubecert/_core.so
except ImportError:  # development layout: _core.so next to the build tree
    import _core as _core

InputError = _core.InputError
PreconditionError = _core.PreconditionError
VerificationError = _core.VerificationError

__all__ = [
    "InputError",
    "PreconditionError",
    "VerificationError",
    "nlcp",
    "is_flag",
    "components",
    "subdivide",
    "octahedralise",
    "join",
    "link",
    "isomorphic",
    "random_complex",
    "homology",
    "pi1",
    "blowup_manifest",
    "verify_links",
    "monodromy_certificates",
    "ordering",
    "run_pipeline",
]


def _dumps(complex_dict):
    return _json.dumps(complex_dict)


def nlcp(complex_dict):
    """No-local-cut-point check: {"ok": bool, "reason": str}."""
    return _json.loads(_core.nlcp(_dumps(complex_dict)))


def is_flag(complex_dict):
    """True when the complex is flag."""
    return _json.loads(_core.flag(_dumps(complex_dict)))["flag"]


def components(complex_dict):
    """Number of connected components."""
    return _json.loads(_core.components(_dumps(complex_dict)))["components"]


def subdivide(complex_dict):
    """Barycentric subdivision, as a complex dict."""
    return _json.loads(_core.subdivide(_dumps(complex_dict)))


def octahedralise(complex_dict):
    """Octahedralisation (vertex doubling), as a complex dict."""
    return _json.loads(_core.octahedralise(_dumps(complex_dict)))


def join(left, right):
    """Simplicial join of two complex dicts."""
    return _json.loads(_core.join_complexes(_dumps(left), _dumps(right)))


def link(complex_dict, face):
    """Link of a face given by a list of vertex labels."""
    return _json.loads(_core.link_of(_dumps(complex_dict), list(face)))


def isomorphic(left, right):
    """True when the two complexes are isomorphic."""
    return _json.loads(
        _core.isomorphic(_dumps(left), _dumps(right)))["isomorphic"]


def random_complex(seed, vertices=8, density=0.5):
    """Random connected flag complex without local cut points."""
    return _json.loads(_core.random_complex(seed, vertices, density))


def homology(complex_dict, dim=1):
    """Reduced homology in one dimension: {"betti": int, "torsion": [int]}."""
    return _json.loads(_core.homology_of(_dumps(complex_dict), dim))


def pi1(complex_dict):
    """Fundamental-group presentation summary (generators, relations, text)."""
    return _json.loads(_core.pi1(_dumps(complex_dict)))


def blowup_manifest(l, parts=(4, 4, 4)):
    """Build the blowup of a base complex and return the verified manifest."""
    return _json.loads(_core.blowup_manifest_of(_dumps(l), list(parts)))


def verify_links(l, parts=(4, 4, 4)):
    """Vertex-link and height-link verification reports for the blowup."""
    return _json.loads(_core.verify_links(_dumps(l), list(parts)))


def monodromy_certificates(l, parts=(4, 4, 4), primes=(0, 0, 0)):
    """Four-loop monodromy certificates for all three coordinate pairs.

    ``primes=(0, 0, 0)`` selects the moduli automatically.
    """
    return _json.loads(
        _core.monodromy_certificates(_dumps(l), list(parts), list(primes)))


def ordering(gamma, labels, budget=100000):
    """Search for a four-cycle ordering of the labeled vertex set."""
    return _json.loads(_core.ordering(_dumps(gamma), list(labels), budget))


def run_pipeline(l_path, parts=(4, 4, 4), primes=(0, 0, 0), window_radius=1,
                 seed=0, out_dir="", strict=True):
    """Run the full verification drive on a complex file; returns the report."""
    return _json.loads(
        _core.run_pipeline(l_path, list(parts), list(primes), window_radius,
                           seed, out_dir, strict))
