"""Sparse vector helpers: dicts {index: scalar} with no stored zeros."""


def add_into(field, acc: dict, vec: dict, coeff=None):
    """acc += coeff * vec (in place)."""
    if coeff is None:
        coeff = field.one
    if field.is_zero(coeff):
        return acc
    for k, v in vec.items():
        s = field.add(acc.get(k, field.zero), field.mul(coeff, v))
        if field.is_zero(s):
            acc.pop(k, None)
        else:
            acc[k] = s
    return acc


def scale(field, vec: dict, coeff) -> dict:
    if field.is_zero(coeff):
        return {}
    return {k: field.mul(coeff, v) for k, v in vec.items()}


def equal(field, u: dict, v: dict) -> bool:
    if len(u) != len(v):
        return False
    for k, w in u.items():
        if k not in v or not field.is_zero(field.sub(w, v[k])):
            return False
    return True


def coerce(field, vec: dict) -> dict:
    out = {}
    for k, v in vec.items():
        v = field.coerce(v)
        if not field.is_zero(v):
            out[k] = v
    return out
