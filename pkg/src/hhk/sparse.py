"""Sparse matrices over an exact field.

Entries are stored as a dict {(row, col): value} holding no zeros; the
canonical entry order is row-major.  Matrices are immutable by convention:
every operation returns a fresh matrix.
"""
from .fields import Field, FieldMismatch, same_field


class SparseMatrix:
    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, rows: int, cols: int, field: Field, entries=None, _skip_check=False):
        self.rows = rows
        self.cols = cols
        self.field = field
        if entries is None:
            entries = {}
        if not _skip_check:
            clean = {}
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r},{c}) outside {rows}x{cols}")
                v = field.coerce(v)
                if not field.is_zero(v):
                    clean[(r, c)] = v
            entries = clean
        self.entries = entries

    @classmethod
    def zero(cls, rows, cols, field):
        return cls(rows, cols, field, {}, _skip_check=True)

    @classmethod
    def identity(cls, n, field):
        one = field.one
        return cls(n, n, field, {(i, i): one for i in range(n)}, _skip_check=True)

    @classmethod
    def from_rows(cls, dense_rows, field):
        rows = len(dense_rows)
        cols = len(dense_rows[0]) if rows else 0
        ent = {}
        for i, row in enumerate(dense_rows):
            for j, v in enumerate(row):
                v = field.coerce(v)
                if not field.is_zero(v):
                    ent[(i, j)] = v
        return cls(rows, cols, field, ent, _skip_check=True)

    def entries_sorted(self):
        """Entries as a list [(row, col, value)] in canonical row-major order."""
        return [(r, c, self.entries[(r, c)]) for (r, c) in sorted(self.entries)]

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.field == other.field
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.field.tag, tuple(sorted(self.entries.items()))))

    def add(self, other):
        f = same_field(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        ent = dict(self.entries)
        for pos, v in other.entries.items():
            w = f.add(ent.get(pos, f.zero), v)
            if f.is_zero(w):
                ent.pop(pos, None)
            else:
                ent[pos] = w
        return SparseMatrix(self.rows, self.cols, f, ent, _skip_check=True)

    def scale(self, s):
        f = self.field
        s = f.coerce(s)
        if f.is_zero(s):
            return SparseMatrix.zero(self.rows, self.cols, f)
        return SparseMatrix(self.rows, self.cols, f,
                            {pos: f.mul(s, v) for pos, v in self.entries.items()},
                            _skip_check=True)

    def sub(self, other):
        return self.add(other.scale(self.field.neg(self.field.one)))

    def mul(self, other):
        """Matrix product self @ other."""
        f = same_field(self.field, other.field)
        if self.cols != other.rows:
            raise ValueError("shape mismatch in mul")
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                pos = (r, c)
                s = f.add(out.get(pos, f.zero), f.mul(v, w))
                if f.is_zero(s):
                    out.pop(pos, None)
                else:
                    out[pos] = s
        return SparseMatrix(self.rows, other.cols, f, out, _skip_check=True)

    def transpose(self):
        return SparseMatrix(self.cols, self.rows, self.field,
                            {(c, r): v for (r, c), v in self.entries.items()},
                            _skip_check=True)

    def apply(self, vec: dict) -> dict:
        """Apply to a sparse column vector {index: value}."""
        f = self.field
        out = {}
        by_col = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        for j, x in vec.items():
            if not (0 <= j < self.cols):
                raise IndexError(f"vector index {j} outside {self.cols}")
            for r, v in by_col.get(j, ()):
                s = f.add(out.get(r, f.zero), f.mul(v, x))
                if f.is_zero(s):
                    out.pop(r, None)
                else:
                    out[r] = s
        return out

    def column(self, j) -> dict:
        return {r: v for (r, c), v in self.entries.items() if c == j}

    def to_dense(self):
        f = self.field
        m = [[f.zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            m[r][c] = v
        return m

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols} over {self.field}, {len(self.entries)} entries)"
