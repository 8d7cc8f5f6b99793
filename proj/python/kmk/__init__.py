"""Python front end for the kmk engine.

Each function returns the structured document that ``kmk <verb> --format
structured`` prints, as a dict.  ``exit_code`` carries the CLI exit status.
"""

import json

from . import _core

SCHEMA_VERSION = _core.SCHEMA_VERSION


class KmkError(RuntimeError):
    def __init__(self, doc):
        super().__init__(doc["error"]["message"])
        self.doc = doc
        self.kind = doc["error"]["kind"]


def run(verb, *, check=True, **kwargs):
    doc = json.loads(_core.run(verb, **kwargs))
    if check and "error" in doc:
        raise KmkError(doc)
    return doc


def iszero(expr, tower="t;x", **kw):
    return run("iszero", expr=expr, tower=tower, **kw)["verdict"]


def isnorm(w, p, tower="t;x", **kw):
    return run("isnorm", w=w, p=p, tower=tower, **kw)["verdict"]


def residue(expr, place="", tower="t;x", **kw):
    return run("residue", expr=expr, place=place, tower=tower, **kw)["residues"]


def normalform(expr, place, tower="t;x", **kw):
    return run("normalform", expr=expr, place=place, tower=tower, **kw)["normal_form"]


def crosscheck(expr, tower="t;x", **kw):
    return run("crosscheck", expr=expr, tower=tower, **kw)["verdict"]


def factor(expr, tower="t;x", **kw):
    return run("factor", expr=expr, tower=tower, **kw)["certificate"]["factors"]
