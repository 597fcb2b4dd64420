"""Small abstract finite groups given by a multiplication table.

Elements are addressed by index; index 0 is always the identity.  The
enumeration order is the breadth-first order in which the generators reach
the elements, which fixes fiber numbering of the coverings built from a group.
"""

from collections import deque


class FiniteGroup:
    def __init__(self, labels, table):
        self.labels = list(labels)
        self.table = [list(r) for r in table]
        n = len(self.labels)
        self.inverses = [next(j for j in range(n) if self.table[i][j] == 0) for i in range(n)]
        self._lookup = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def from_generators(cls, gens, mul, identity):
        """Closure of ``gens`` under ``mul`` (hashable labels)."""
        labels = [identity]
        seen = {identity: 0}
        queue = deque([identity])
        while queue:
            a = queue.popleft()
            for g in gens:
                b = mul(a, g)
                if b not in seen:
                    seen[b] = len(labels)
                    labels.append(b)
                    queue.append(b)
        table = [[seen[mul(a, b)] for b in labels] for a in labels]
        return cls(labels, table)

    @classmethod
    def cyclic(cls, n):
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        return cls(range(n), [[(i + j) % n for j in range(n)] for i in range(n)])

    @classmethod
    def from_permutations(cls, perms):
        """Group generated by permutations given as image tuples of range(n)."""
        perms = [tuple(p) for p in perms]
        n = len(perms[0]) if perms else 0
        # composition "first a, then b" so that the product matches right actions
        return cls.from_generators(perms, lambda a, b: tuple(b[a[i]] for i in range(n)), tuple(range(n)))

    @property
    def order(self):
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def mul(self, i, j):
        return self.table[i][j]

    def inv(self, i):
        return self.inverses[i]

    def index(self, label):
        return self._lookup[label]

    def power(self, i, e):
        if e < 0:
            i, e = self.inverses[i], -e
        acc = 0
        for _ in range(e):
            acc = self.table[acc][i]
        return acc

    def subgroup(self, gens):
        """Indices of the subgroup generated by ``gens``."""
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for g in gens:
                b = self.table[a][g]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return sorted(seen)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"
