import re
from typing import List, Optional

from app.errors import InvalidInput
from app.mutation import QuiverSpec, load_quiver, preset
from app.repcore import (
    ClusterObject,
    GenericFamily,
    QuiverAlgebraContext,
    RepFamily,
    fixed_family,
    injective_family,
    kronecker_family,
    load_representation,
    projective_family,
    simple_rep,
)


class SpecNormalizer:
    """Normalize user-written object specs and index lists"""

    def __init__(self):
        # Alternative spellings of the summand kinds
        self.synonyms = {
            'shifted': 'SP',
            'sp': 'SP',
            'proj': 'P',
            'projective': 'P',
            'inj': 'I',
            'injective': 'I',
            'simple': 'S',
            'kr': 'kronecker',
            'kron': 'kronecker',
            'generic': 'root',
        }

        self.normalizations = {
            r'\s*:\s*': ':',
            r'\s*\+\s*': '+',
            r'\s*,\s*': ',',
            r'[()\[\]]': '',
        }

    def normalize(self, text: str) -> str:
        text = text.strip()
        if not text:
            raise InvalidInput("empty object spec")
        for pattern, replacement in self.normalizations.items():
            text = re.sub(pattern, replacement, text)
        summands = []
        for summand in text.split('+'):
            head, _, rest = summand.partition(':')
            head = self.synonyms.get(head.lower(), head)
            if head.lower() in ('kronecker', 'root', 'file'):
                head = head.lower()
            elif head.lower() in ('sp', 'p', 'i', 's'):
                head = head.upper()
            summands.append(f"{head}:{rest}" if rest else head)
        return '+'.join(summands)


def parse_vector(text: str) -> List[int]:
    """'1,2' or '1 2' -> [1, 2]"""
    parts = [p for p in re.split(r'[,\s]+', text.strip()) if p]
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InvalidInput(f"'{text}' is not a list of integers") from None


def one_based(indices: List[int], n: int, what: str = "index") -> List[int]:
    """1-based user indices -> 0-based, range checked"""
    for i in indices:
        if not 1 <= i <= n:
            raise InvalidInput(f"{what} {i} out of range 1..{n}")
    return [i - 1 for i in indices]


class ObjectSpecParser:
    """Resolve specs such as 'SP:1', 'P:2', 'root:1,1', 'kronecker:W:1' or 'SP:1+S:2' to cluster objects"""

    def __init__(self, ctx: QuiverAlgebraContext, seed: int = 0, attempts: int = 200):
        self.ctx = ctx
        self.seed = seed
        self.attempts = attempts
        self.normalizer = SpecNormalizer()

        self.patterns = [
            (r'^SP:(\d+)$', self._handle_shifted),
            (r'^P:(\d+)$', self._handle_projective),
            (r'^I:(\d+)$', self._handle_injective),
            (r'^S:(\d+)$', self._handle_simple),
            (r'^root:([\d,]+)$', self._handle_root),
            (r'^kronecker:([UVWuvw]):(\d+)(?::(\d+),(\d+))?$', self._handle_kronecker),
            (r'^file:(.+)$', self._handle_file),
        ]

    def parse(self, text: str) -> ClusterObject:
        """Direct sum of the '+'-separated summands"""
        total = ClusterObject(self.ctx)
        for summand in self.normalizer.normalize(text).split('+'):
            total = total.plus(self._parse_summand(summand))
        return total

    def _parse_summand(self, text: str) -> ClusterObject:
        for pattern, handler in self.patterns:
            match = re.match(pattern, text)
            if match:
                return handler(match)
        raise InvalidInput(f"cannot resolve object spec '{text}'")

    def _vertex(self, match) -> int:
        return one_based([int(match.group(1))], self.ctx.n, "vertex")[0]

    def _module(self, family: RepFamily) -> ClusterObject:
        return ClusterObject.of_module(family)

    def _handle_shifted(self, match) -> ClusterObject:
        return ClusterObject.shifted_projective(self.ctx, self._vertex(match))

    def _handle_projective(self, match) -> ClusterObject:
        return self._module(projective_family(self.ctx, self._vertex(match)))

    def _handle_injective(self, match) -> ClusterObject:
        return self._module(injective_family(self.ctx, self._vertex(match)))

    def _handle_simple(self, match) -> ClusterObject:
        i = self._vertex(match)
        return self._module(fixed_family(simple_rep(self.ctx, i), f"S{i + 1}"))

    def _handle_root(self, match) -> ClusterObject:
        d = parse_vector(match.group(1))
        if len(d) != self.ctx.n:
            raise InvalidInput(f"root {tuple(d)} does not have {self.ctx.n} entries")
        return self._module(GenericFamily(self.ctx, d, seed=self.seed, attempts=self.attempts))

    def _handle_kronecker(self, match) -> ClusterObject:
        kind, n = match.group(1).upper(), int(match.group(2))
        point = (1, 0) if match.group(3) is None else (int(match.group(3)), int(match.group(4)))
        family = kronecker_family(kind, n, point)
        if family.ctx != self.ctx:
            raise InvalidInput("Kronecker modules need the kronecker quiver")
        return self._module(family)

    def _handle_file(self, match) -> ClusterObject:
        rep = load_representation(self.ctx, match.group(1))
        return self._module(fixed_family(rep, f"file({match.group(1)})"))


def object_from_root(ctx: QuiverAlgebraContext, root: List[int], seed: int = 0,
                     attempts: int = 200) -> ClusterObject:
    return ObjectSpecParser(ctx, seed, attempts).parse("root:" + ",".join(map(str, root)))


def resolve_quiver(name: Optional[str] = None, path: Optional[str] = None) -> QuiverSpec:
    """Exactly one of a preset name or a quiver JSON file"""
    if (name is None) == (path is None):
        raise InvalidInput("give exactly one of a preset name or a quiver file")
    return preset(name) if name is not None else load_quiver(path)
