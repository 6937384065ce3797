"""The JSON workspace format, report emission, and their round-trips.

A workspace declares a coefficient field, named complexes, and named
structures whose carriers are references to those complexes.  Matrices
are row-major arrays keyed by the string of the *source* degree; absent
keys are zero blocks.  Rational scalars travel as strings "p/q" (or "p"),
prime-field residues as integers, so no float ever enters a file.

Structure maps valued in a relative tensor (coring comultiplications,
coring-comodule coactions) are written in the canonical basis that the
engine derives deterministically from the declared actions, so files
round-trip entrywise.

Complexes and declared chain maps are always validated structurally
(d∘d = 0, commuting squares); the ``validate`` flag controls only the
axiom checkers on structures.  Preservation reports serialize to
``{"kind", "n", "verdicts", "hypotheses", "witness"}`` where ``witness``
is the first failing verdict's witness in the fixed verdict order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .complexes import ChainComplex, ChainMap, NotAChainMap, NotAComplex, Witness
from .fields import Field, QQ
from .graded import GradedMap, GradedModule, tensor_modules
from .matrices import Matrix
from .structures import (
    AxiomReport,
    Comodule,
    Comonoid,
    Coring,
    CoringComodule,
    Monoid,
    RightModule,
    Verdict,
    check_comodule,
    check_comonoid,
    check_coring,
    check_coring_comodule,
    check_monoid,
    check_right_module,
    relative_tensor_data,
)
from .transfer import VERDICT_ORDER, PreservationReport


class ParseError(Exception):
    """The document is not JSON at all."""


class SchemaError(Exception):
    def __init__(self, path: str, expected: str):
        self.path = path
        self.expected = expected
        super().__init__(f"{path}: expected {expected}")


class ValidationError(Exception):
    def __init__(self, name: str, axiom: str, witness: Witness | None):
        self.name = name
        self.axiom = axiom
        self.witness = witness
        where = f" on '{witness.basis}' in degree {witness.degree}" if witness else ""
        super().__init__(f"structure '{name}' fails {axiom}{where}")


SECTION_KEYS = (
    "complexes", "maps", "comonoids", "comodules",
    "monoids", "modules", "corings", "coring_comodules",
)


@dataclass
class Workspace:
    field: Field
    complexes: dict[str, ChainComplex] = dc_field(default_factory=dict)
    maps: dict[str, ChainMap] = dc_field(default_factory=dict)
    comonoids: dict[str, Comonoid] = dc_field(default_factory=dict)
    comodules: dict[str, Comodule] = dc_field(default_factory=dict)
    monoids: dict[str, Monoid] = dc_field(default_factory=dict)
    modules: dict[str, RightModule] = dc_field(default_factory=dict)
    corings: dict[str, Coring] = dc_field(default_factory=dict)
    coring_comodules: dict[str, CoringComodule] = dc_field(default_factory=dict)
    refs: dict[str, dict[str, str]] = dc_field(default_factory=dict)

    def find(self, name: str):
        """(section, object) for a declared name, or None."""
        for section in SECTION_KEYS:
            table = getattr(self, section)
            if name in table:
                return section, table[name]
        return None


# ---- parsing ------------------------------------------------------------------


def _expect(cond: bool, path: str, what: str):
    if not cond:
        raise SchemaError(path, what)


def _parse_field(obj, path: str) -> Field:
    _expect(isinstance(obj, dict), path, "an object with a 'kind' key")
    kind = obj.get("kind")
    if kind == "Q":
        _expect(set(obj) == {"kind"}, path, 'exactly {"kind": "Q"}')
        return QQ
    if kind == "Fp":
        _expect(set(obj) == {"kind", "p"}, path, 'exactly {"kind": "Fp", "p": <prime>}')
        p = obj.get("p")
        _expect(isinstance(p, int) and not isinstance(p, bool), f"{path}.p", "an integer prime")
        try:
            return Field("Fp", p)
        except ValueError:
            raise SchemaError(f"{path}.p", "a prime modulus") from None
    raise SchemaError(f"{path}.kind", '"Q" or "Fp"')


def _parse_blocks(
    obj, path: str, fld: Field, source: GradedModule, target: GradedModule, degree: int
) -> GradedMap:
    _expect(isinstance(obj, dict), path, "an object mapping degree strings to matrices")
    blocks: dict[int, Matrix] = {}
    for key in obj:
        try:
            deg = int(key)
        except ValueError:
            raise SchemaError(f"{path}.{key}", "an integer degree key") from None
        rows_want = target.dim(deg + degree)
        cols_want = source.dim(deg)
        raw = obj[key]
        _expect(isinstance(raw, list), f"{path}.{key}", f"a {rows_want}x{cols_want} matrix")
        _expect(len(raw) == rows_want, f"{path}.{key}", f"{rows_want} rows of length {cols_want}")
        entries = []
        for i, row in enumerate(raw):
            _expect(isinstance(row, list) and len(row) == cols_want,
                    f"{path}.{key}[{i}]", f"a row of {cols_want} scalars")
            parsed = []
            for j, cell in enumerate(row):
                try:
                    parsed.append(fld.parse_scalar(cell))
                except ValueError as exc:
                    raise SchemaError(f"{path}.{key}[{i}][{j}]", str(exc)) from None
            entries.append(tuple(parsed))
        blocks[deg] = Matrix(fld, rows_want, cols_want, tuple(entries))
    return GradedMap(source, target, degree, blocks)


def _parse_module(obj, path: str, fld: Field) -> GradedModule:
    _expect(isinstance(obj, dict), path, "an object mapping degree strings to label lists")
    basis = {}
    for key in obj:
        try:
            deg = int(key)
        except ValueError:
            raise SchemaError(f"{path}.{key}", "an integer degree key") from None
        labels = obj[key]
        _expect(isinstance(labels, list) and all(isinstance(s, str) for s in labels),
                f"{path}.{key}", "a list of label strings")
        basis[deg] = tuple(labels)
    try:
        return GradedModule(fld, basis)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _resolve(table: dict, name, path: str, what: str):
    _expect(isinstance(name, str), path, f"the name of a declared {what}")
    if name not in table:
        raise SchemaError(path, f"a reference to a declared {what} (no '{name}')")
    return table[name]


def parse_workspace(text: str, validate: bool = True) -> Workspace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    _expect(isinstance(doc, dict), "$", "a JSON object")
    for key in doc:
        _expect(key == "field" or key in SECTION_KEYS, f"$.{key}", "a known section")
    _expect("field" in doc, "$.field", "a field descriptor")
    fld = _parse_field(doc["field"], "$.field")
    ws = Workspace(fld)
    seen: set[str] = set()

    def claim(name, path):
        _expect(isinstance(name, str) and name, path, "a nonempty structure name")
        if name in seen:
            raise SchemaError(path, f"a unique name ('{name}' is already declared)")
        seen.add(name)

    def section(key) -> dict:
        raw = doc.get(key, {})
        _expect(isinstance(raw, dict), f"$.{key}", "an object of named declarations")
        return raw

    def fields_of(obj, path, required):
        _expect(isinstance(obj, dict), path, "an object")
        _expect(set(obj) == set(required), path, f"exactly the keys {sorted(required)}")

    for name, spec in section("complexes").items():
        claim(name, f"$.complexes.{name}")
        path = f"$.complexes.{name}"
        fields_of(spec, path, ("degrees", "d"))
        module = _parse_module(spec["degrees"], f"{path}.degrees", fld)
        d = _parse_blocks(spec["d"], f"{path}.d", fld, module, module, -1)
        try:
            ws.complexes[name] = ChainComplex(module, d)
        except NotAComplex as exc:
            raise ValidationError(name, "d_squared_zero", Witness(exc.degree, exc.witness, "d_squared_zero"))

    for name, spec in section("maps").items():
        claim(name, f"$.maps.{name}")
        path = f"$.maps.{name}"
        fields_of(spec, path, ("source", "target", "blocks"))
        src = _resolve(ws.complexes, spec["source"], f"{path}.source", "complex")
        tgt = _resolve(ws.complexes, spec["target"], f"{path}.target", "complex")
        blocks = _parse_blocks(spec["blocks"], f"{path}.blocks", fld, src.module, tgt.module, 0)
        try:
            ws.maps[name] = ChainMap(src, tgt, blocks)
        except NotAChainMap as exc:
            raise ValidationError(name, "chain_map", Witness(exc.degree, exc.witness, "chain_map"))
        ws.refs[name] = {"source": spec["source"], "target": spec["target"]}

    def check(name, structure, checker):
        if validate:
            report = checker(structure)
            if not report.ok:
                w = report.witness
                raise ValidationError(name, w.identity if w else "axioms", w)

    for name, spec in section("comonoids").items():
        claim(name, f"$.comonoids.{name}")
        path = f"$.comonoids.{name}"
        fields_of(spec, path, ("carrier", "delta"))
        carrier = _resolve(ws.complexes, spec["carrier"], f"{path}.carrier", "complex")
        square = tensor_modules(carrier.module, carrier.module)
        delta = _parse_blocks(spec["delta"], f"{path}.delta", fld, carrier.module, square, 0)
        structure = Comonoid(carrier, delta)
        check(name, structure, check_comonoid)
        ws.comonoids[name] = structure
        ws.refs[name] = {"carrier": spec["carrier"]}

    for name, spec in section("monoids").items():
        claim(name, f"$.monoids.{name}")
        path = f"$.monoids.{name}"
        fields_of(spec, path, ("carrier", "mu"))
        carrier = _resolve(ws.complexes, spec["carrier"], f"{path}.carrier", "complex")
        square = tensor_modules(carrier.module, carrier.module)
        mu = _parse_blocks(spec["mu"], f"{path}.mu", fld, square, carrier.module, 0)
        structure = Monoid(carrier, mu)
        check(name, structure, check_monoid)
        ws.monoids[name] = structure
        ws.refs[name] = {"carrier": spec["carrier"]}

    for name, spec in section("comodules").items():
        claim(name, f"$.comodules.{name}")
        path = f"$.comodules.{name}"
        fields_of(spec, path, ("comonoid", "carrier", "coaction"))
        coalgebra = _resolve(ws.comonoids, spec["comonoid"], f"{path}.comonoid", "comonoid")
        carrier = _resolve(ws.complexes, spec["carrier"], f"{path}.carrier", "complex")
        target = tensor_modules(carrier.module, coalgebra.carrier.module)
        coaction = _parse_blocks(spec["coaction"], f"{path}.coaction", fld, carrier.module, target, 0)
        structure = Comodule(coalgebra, carrier, coaction)
        check(name, structure, check_comodule)
        ws.comodules[name] = structure
        ws.refs[name] = {"comonoid": spec["comonoid"], "carrier": spec["carrier"]}

    for name, spec in section("modules").items():
        claim(name, f"$.modules.{name}")
        path = f"$.modules.{name}"
        fields_of(spec, path, ("monoid", "carrier", "action"))
        algebra = _resolve(ws.monoids, spec["monoid"], f"{path}.monoid", "monoid")
        carrier = _resolve(ws.complexes, spec["carrier"], f"{path}.carrier", "complex")
        source = tensor_modules(carrier.module, algebra.carrier.module)
        action = _parse_blocks(spec["action"], f"{path}.action", fld, source, carrier.module, 0)
        structure = RightModule(algebra, carrier, action)
        check(name, structure, check_right_module)
        ws.modules[name] = structure
        ws.refs[name] = {"monoid": spec["monoid"], "carrier": spec["carrier"]}

    for name, spec in section("corings").items():
        claim(name, f"$.corings.{name}")
        path = f"$.corings.{name}"
        fields_of(spec, path, ("monoid", "carrier", "left_action", "right_action", "delta"))
        algebra = _resolve(ws.monoids, spec["monoid"], f"{path}.monoid", "monoid")
        carrier = _resolve(ws.complexes, spec["carrier"], f"{path}.carrier", "complex")
        a_mod, b_mod = algebra.carrier.module, carrier.module
        left = _parse_blocks(spec["left_action"], f"{path}.left_action", fld,
                             tensor_modules(a_mod, b_mod), b_mod, 0)
        right = _parse_blocks(spec["right_action"], f"{path}.right_action", fld,
                              tensor_modules(b_mod, a_mod), b_mod, 0)
        rel = relative_tensor_data(carrier, right, algebra.carrier, carrier, left)
        delta = _parse_blocks(spec["delta"], f"{path}.delta", fld, b_mod, rel.module, 0)
        structure = Coring(algebra, carrier, left, right, delta)
        check(name, structure, check_coring)
        ws.corings[name] = structure
        ws.refs[name] = {"monoid": spec["monoid"], "carrier": spec["carrier"]}

    for name, spec in section("coring_comodules").items():
        claim(name, f"$.coring_comodules.{name}")
        path = f"$.coring_comodules.{name}"
        fields_of(spec, path, ("coring", "module", "coaction"))
        coring = _resolve(ws.corings, spec["coring"], f"{path}.coring", "coring")
        module = _resolve(ws.modules, spec["module"], f"{path}.module", "module")
        if module.algebra != coring.algebra:
            raise SchemaError(f"{path}.module", "a module over the coring's monoid")
        rel = relative_tensor_data(
            module.carrier, module.action, coring.algebra.carrier,
            coring.carrier, coring.left_action,
        )
        coaction = _parse_blocks(spec["coaction"], f"{path}.coaction", fld,
                                 module.carrier.module, rel.module, 0)
        structure = CoringComodule(coring, module, coaction)
        check(name, structure, check_coring_comodule)
        ws.coring_comodules[name] = structure
        ws.refs[name] = {"coring": spec["coring"], "module": spec["module"]}

    return ws


# ---- emission ------------------------------------------------------------------


def _emit_blocks(fld: Field, gmap: GradedMap) -> dict:
    return {
        str(deg): [[fld.format_scalar(x) for x in row] for row in blk.entries]
        for deg, blk in gmap.blocks.items()
    }


def _emit_module(module: GradedModule) -> dict:
    return {str(deg): list(module.labels(deg)) for deg in module.degrees()}


def emit_workspace(ws: Workspace) -> str:
    fld = ws.field
    doc: dict = {"field": {"kind": "Q"} if fld.kind == "Q" else {"kind": "Fp", "p": fld.p}}
    if ws.complexes:
        doc["complexes"] = {
            name: {"degrees": _emit_module(x.module), "d": _emit_blocks(fld, x.differential)}
            for name, x in ws.complexes.items()
        }
    if ws.maps:
        doc["maps"] = {
            name: {
                "source": ws.refs[name]["source"],
                "target": ws.refs[name]["target"],
                "blocks": _emit_blocks(fld, f.map),
            }
            for name, f in ws.maps.items()
        }
    if ws.comonoids:
        doc["comonoids"] = {
            name: {"carrier": ws.refs[name]["carrier"], "delta": _emit_blocks(fld, c.delta)}
            for name, c in ws.comonoids.items()
        }
    if ws.comodules:
        doc["comodules"] = {
            name: {
                "comonoid": ws.refs[name]["comonoid"],
                "carrier": ws.refs[name]["carrier"],
                "coaction": _emit_blocks(fld, m.coaction),
            }
            for name, m in ws.comodules.items()
        }
    if ws.monoids:
        doc["monoids"] = {
            name: {"carrier": ws.refs[name]["carrier"], "mu": _emit_blocks(fld, a.mu)}
            for name, a in ws.monoids.items()
        }
    if ws.modules:
        doc["modules"] = {
            name: {
                "monoid": ws.refs[name]["monoid"],
                "carrier": ws.refs[name]["carrier"],
                "action": _emit_blocks(fld, m.action),
            }
            for name, m in ws.modules.items()
        }
    if ws.corings:
        doc["corings"] = {
            name: {
                "monoid": ws.refs[name]["monoid"],
                "carrier": ws.refs[name]["carrier"],
                "left_action": _emit_blocks(fld, b.left_action),
                "right_action": _emit_blocks(fld, b.right_action),
                "delta": _emit_blocks(fld, b.delta),
            }
            for name, b in ws.corings.items()
        }
    if ws.coring_comodules:
        doc["coring_comodules"] = {
            name: {
                "coring": ws.refs[name]["coring"],
                "module": ws.refs[name]["module"],
                "coaction": _emit_blocks(fld, m.coaction),
            }
            for name, m in ws.coring_comodules.items()
        }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---- reports --------------------------------------------------------------------


def _witness_doc(w: Witness | None):
    if w is None:
        return None
    return {"degree": w.degree, "basis": w.basis, "identity": w.identity}


def emit_report(report: PreservationReport, fmt: str = "text") -> str:
    if fmt == "json":
        doc = {
            "kind": report.kind,
            "n": report.n,
            "verdicts": {name: v.ok for name, v in report.items()},
            "hypotheses": dict(report.hypotheses),
            "witness": _witness_doc(report.witness),
        }
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = [f"preservation of {report.kind} at n = {report.n}"]
    hyp = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in report.hypotheses.items())
    lines.append(f"hypotheses: {hyp}" if hyp else "hypotheses: none")
    for name, verdict in report.items():
        if verdict.ok:
            lines.append(f"{name:<18} PASS")
        else:
            w = verdict.witness
            where = f"  [{w.identity} on '{w.basis}' in degree {w.degree}]" if w else ""
            lines.append(f"{name:<18} FAIL{where}")
    lines.append(f"result: {'GREEN' if report.green else 'RED'}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> PreservationReport:
    """Rebuild a report from its JSON emission.

    The schema stores one witness (the first failing verdict's), so later
    failing verdicts come back without theirs; re-emission is stable.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    _expect(isinstance(doc, dict), "$", "a report object")
    for key in ("kind", "n", "verdicts", "hypotheses", "witness"):
        _expect(key in doc, f"$.{key}", "a report key")
    verdict_flags = doc["verdicts"]
    _expect(set(verdict_flags) == set(VERDICT_ORDER), "$.verdicts", f"the keys {list(VERDICT_ORDER)}")
    wdoc = doc["witness"]
    witness = None
    if wdoc is not None:
        witness = Witness(wdoc["degree"], wdoc["basis"], wdoc["identity"])
    verdicts = {}
    attached = False
    for name in VERDICT_ORDER:
        ok = bool(verdict_flags[name])
        if not ok and not attached and witness is not None:
            verdicts[name] = Verdict(False, witness)
            attached = True
        else:
            verdicts[name] = Verdict(ok)
    return PreservationReport(
        doc["kind"], doc["n"],
        verdicts["square"], verdicts["axioms"], verdicts["map"],
        verdicts["local"], verdicts["local_equivalence"],
        dict(doc["hypotheses"]),
    )


# ---- helpers for packaging single structures -------------------------------------


def workspace_for_structure(kind: str, structure, name: str = "counterexample") -> Workspace:
    """A standalone workspace declaring one structure and its carriers."""
    kind = kind.replace("-", "_")
    if kind == "comonoid":
        ws = Workspace(structure.carrier.field)
        ws.complexes["X"] = structure.carrier
        ws.comonoids[name] = structure
        ws.refs[name] = {"carrier": "X"}
        return ws
    if kind == "comodule":
        ws = Workspace(structure.carrier.field)
        ws.complexes["B_carrier"] = structure.coalgebra.carrier
        ws.complexes["M_carrier"] = structure.carrier
        ws.comonoids["B"] = structure.coalgebra
        ws.refs["B"] = {"carrier": "B_carrier"}
        ws.comodules[name] = structure
        ws.refs[name] = {"comonoid": "B", "carrier": "M_carrier"}
        return ws
    if kind == "coring_comodule":
        coring = structure.coring
        ws = Workspace(structure.carrier.carrier.field)
        ws.complexes["A_carrier"] = coring.algebra.carrier
        ws.complexes["B_carrier"] = coring.carrier
        ws.complexes["M_carrier"] = structure.carrier.carrier
        ws.monoids["A"] = coring.algebra
        ws.refs["A"] = {"carrier": "A_carrier"}
        ws.corings["B"] = coring
        ws.refs["B"] = {"monoid": "A", "carrier": "B_carrier"}
        ws.modules["M"] = structure.carrier
        ws.refs["M"] = {"monoid": "A", "carrier": "M_carrier"}
        ws.coring_comodules[name] = structure
        ws.refs[name] = {"coring": "B", "module": "M"}
        return ws
    raise ValueError(f"unknown structure kind {kind!r}")
