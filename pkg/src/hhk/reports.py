"""Structured reports: deterministic JSON (bit-identical across runs and
thread counts), CSV, and plain tables.

Wall-clock and memory statistics are attached only when explicitly
requested, so the default output stays byte-stable.
"""
import hashlib
import json

SCHEMA = "hhk-report/1"


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def sha256_of(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def input_hash_of_doc(doc) -> str:
    return sha256_of(canonical_json(doc).encode())


def build_report(command, inputs, parameters, results, verdict=None, stats=None):
    doc = {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "parameters": parameters,
        "results": results,
    }
    if verdict is not None:
        doc["verdict"] = verdict
    if stats is not None:
        doc["stats"] = stats
    return doc


def betti_rows_json(rows, display="homology", include_reps=False, labeler=None):
    out = []
    for r in rows:
        deg = r.degree if display == "homology" else -r.degree
        entry = {"degree": deg, "dim": r.dim, "trusted": bool(r.trusted)}
        if include_reps and labeler is not None:
            entry["representatives"] = [labeler(r.degree, rep)
                                        for rep in r.representatives]
        out.append(entry)
    out.sort(key=lambda e: e["degree"])
    return out


def format_report(doc, fmt):
    if fmt == "json":
        return canonical_json(doc)
    if fmt == "csv":
        return _format_csv(doc)
    return _format_table(doc)


def _rows_of(doc):
    res = doc.get("results", {})
    if isinstance(res, dict) and "betti" in res:
        return res["betti"]
    return None


def _format_csv(doc):
    rows = _rows_of(doc)
    lines = []
    if rows is not None:
        lines.append("degree,dim,trusted")
        for r in rows:
            lines.append(f"{r['degree']},{r['dim']},{int(r['trusted'])}")
    else:
        lines.append("key,value")
        for k, v in sorted(doc.get("results", {}).items()):
            lines.append(f"{k},{json.dumps(v, sort_keys=True)}")
    if "verdict" in doc:
        lines.append(f"verdict,{doc['verdict']}")
    return "\n".join(lines) + "\n"


def _format_table(doc):
    lines = [f"command: {' '.join(doc.get('command', []))}"]
    rows = _rows_of(doc)
    if rows is not None:
        lines.append(f"{'degree':>7} {'dim':>5} trusted")
        for r in rows:
            flag = "yes" if r["trusted"] else "NO"
            lines.append(f"{r['degree']:>7} {r['dim']:>5} {flag}")
    else:
        for k, v in sorted(doc.get("results", {}).items()):
            lines.append(f"{k}: {json.dumps(v, sort_keys=True)}")
    if "verdict" in doc:
        lines.append(f"verdict: {doc['verdict']}")
    return "\n".join(lines) + "\n"
