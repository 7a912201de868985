"""Seeded generators, the three line-based text formats, and DOT export.

Formats (UTF-8, ``#`` starts a comment, tokens separated by whitespace)::

    kxk 3                                  clique on the 3x3 grid
    edge 1 2 2 3                           cells are (row, column), 1-based

    psat vars=3 alpha=2 beta=4             permutation SAT
    var 1 x_1                              optional display name
    clause 1<2 | 3<1<2                     literals are chains of variables

    game rabin vertices=3 pairs=1          also: parity colors=K,
    vertex 0 owner=A name=Δ                muller colors=K [family=rabin],
    vertex 1 owner=S colors=...            genparity dim=d colors=K
    edge 0 1
    init 0
    pair 1 G=1,2 B=
    family 1,3                             muller only; "-" is the empty set

Game vertices are 0-based.  Writers are canonical: parsing their output
and writing again reproduces the text exactly.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable

import numpy as np

from .arena import (
    AUDREY,
    STEVEN,
    Arena,
    GenParityObjective,
    Lasso,
    MullerObjective,
    Objective,
    ParityObjective,
    Player,
    RabinObjective,
)
from .errors import ParseError, PermGamesError, ValidationError
from .permsat import Formula
from .reductions import CliqueInstance

GAME_KINDS = ("rabin", "parity", "muller", "genparity")


# ---------------------------------------------------------------------------
# generators


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed & (2**64 - 1))


def gen_clique(k: int, density: float, seed: int, planted: bool = False) -> CliqueInstance:
    """Random cross-row edges, each present with probability ``density``.

    With ``planted`` a random column per row is chosen first and those cells
    are made pairwise adjacent.
    """
    if k < 1:
        raise ValidationError("k must be positive")
    if not 0.0 <= density <= 1.0:
        raise ValidationError("density must lie in [0, 1]")
    rng = _rng(seed)
    edges = set()
    if planted:
        cols = rng.integers(1, k + 1, size=k)
        cells = [(i + 1, int(c)) for i, c in enumerate(cols)]
        edges.update((u, v) for a, u in enumerate(cells) for v in cells[a + 1:])
    candidates = list(CliqueInstance(k).cross_row_pairs())
    keep = rng.random(len(candidates)) < density
    edges.update(e for e, flag in zip(candidates, keep) if flag)
    return CliqueInstance(k, frozenset(edges))


def _gen_arena(n: int, density: float, rng: np.random.Generator) -> Arena:
    owner = [STEVEN if b else AUDREY for b in rng.random(n) < 0.5]
    adj = rng.random((n, n)) < density
    for u in range(n):
        if not adj[u].any():
            adj[u, rng.integers(n)] = True
    edges = [(u, v) for u in range(n) for v in range(n) if adj[u, v]]
    return Arena.from_edges(owner, edges, initial=0)


def gen_rabin(n: int, k: int, density: float, seed: int, member: float = 0.3) -> tuple[Arena, RabinObjective]:
    """Random arena on ``n`` vertices and ``k`` random pairs.

    Every ordered pair of vertices (self-loops included) is an edge with
    probability ``density``; a vertex left without successors receives one
    uniformly random edge.  Each vertex joins each ``G_i`` and each ``B_i``
    independently with probability ``member``.
    """
    if n < 1 or k < 1:
        raise ValidationError("n and k must be positive")
    if not 0.0 <= density <= 1.0:
        raise ValidationError("density must lie in [0, 1]")
    rng = _rng(seed)
    arena = _gen_arena(n, density, rng)
    pairs = []
    for _ in range(k):
        g = frozenset(np.flatnonzero(rng.random(n) < member).tolist())
        b = frozenset(np.flatnonzero(rng.random(n) < member).tolist())
        pairs.append((g, b))
    return arena, RabinObjective(tuple(pairs))


def gen_parity(n: int, max_colour: int, density: float, seed: int) -> tuple[Arena, ParityObjective]:
    if n < 1 or max_colour < 1:
        raise ValidationError("n and the colour count must be positive")
    rng = _rng(seed)
    arena = _gen_arena(n, density, rng)
    colours = tuple(int(c) for c in rng.integers(1, max_colour + 1, size=n))
    return arena, ParityObjective(colours, max_colour)


def gen_permsat(k: int, m: int, beta: int, seed: int) -> Formula:
    """``m`` clauses over ``k >= 2`` variables with binary literals.

    Each clause has a uniform width in ``1..beta`` and literals drawn
    uniformly without replacement from the ``k(k-1)`` ordered pairs.
    """
    if k < 2 or m < 1 or beta < 1:
        raise ValidationError("need k >= 2, m >= 1 and beta >= 1")
    rng = _rng(seed)
    pool = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1) if i != j]
    clauses = []
    for _ in range(m):
        width = int(rng.integers(1, min(beta, len(pool)) + 1))
        picks = rng.choice(len(pool), size=width, replace=False)
        clauses.append(tuple(pool[int(p)] for p in picks))
    return Formula(k, tuple(clauses), alpha=2, beta=beta)


def random_lasso(arena: Arena, seed: int, max_prefix: int = 4, tries: int = 20) -> Lasso:
    """A random valid lasso; its cycle may revisit vertices."""
    rng = _rng(seed)
    succ = arena.successors
    walk = [arena.initial]
    for _ in range(int(rng.integers(0, max_prefix + 1))):
        walk.append(int(rng.choice(succ[walk[-1]])))
    anchor = walk[-1]
    for _ in range(tries):
        loop = [anchor]
        v = anchor
        for _ in range(3 * arena.vertex_count):
            v = int(rng.choice(succ[v]))
            if v == anchor:
                return Lasso(tuple(walk[:-1]), tuple(loop))
            loop.append(v)
    # fall back to the first repetition along a random walk
    seen = {v: i for i, v in enumerate(walk)}
    v = walk[-1]
    while True:
        v = int(rng.choice(succ[v]))
        if v in seen:
            return Lasso(tuple(walk[: seen[v]]), tuple(walk[seen[v]:]))
        seen[v] = len(walk)
        walk.append(v)


# ---------------------------------------------------------------------------
# shared parsing helpers


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(token: str, no: int, what: str) -> int:
    if not re.fullmatch(r"[+-]?[0-9]+", token):
        raise ParseError(f"{what}: expected an integer, got {token!r}", no)
    return int(token)


def _options(tokens: list[str], no: int, allowed: Iterable[str]) -> dict[str, str]:
    allowed = set(allowed)
    opts: dict[str, str] = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {tok!r}", no)
        if key not in allowed:
            raise ParseError(f"unknown option {key!r}", no)
        if key in opts:
            raise ParseError(f"option {key!r} given twice", no)
        opts[key] = value
    return opts


def _int_list(value: str, no: int, what: str) -> list[int]:
    if value in ("", "-"):
        return []
    return [_int(t, no, what) for t in value.split(",")]


def _header(text: str, keyword: str):
    it = _lines(text)
    first = next(it, None)
    if first is None:
        raise ParseError("empty input")
    no, toks = first
    if toks[0] != keyword:
        raise ParseError(f"expected a {keyword!r} header, got {toks[0]!r}", no)
    return no, toks, it


def _wrap(fn, text):
    try:
        return fn(text)
    except PermGamesError:
        raise
    except RecursionError as exc:  # pragma: no cover - defensive
        raise ParseError(f"input too deeply nested: {exc}") from exc


# ---------------------------------------------------------------------------
# clique format


def parse_clique(text: str) -> CliqueInstance:
    return _wrap(_parse_clique, text)


def _parse_clique(text: str) -> CliqueInstance:
    no, toks, rest = _header(text, "kxk")
    if len(toks) != 2:
        raise ParseError("header must be 'kxk <k>'", no)
    k = _int(toks[1], no, "grid size")
    if k < 1:
        raise ValidationError(f"grid size must be positive, got {k}")
    edges = []
    for no, toks in rest:
        if toks[0] != "edge":
            raise ParseError(f"unknown directive {toks[0]!r}", no)
        if len(toks) != 5:
            raise ParseError("edge lines need four coordinates", no)
        i, j, i2, j2 = (_int(t, no, "coordinate") for t in toks[1:])
        for c in (i, j, i2, j2):
            if not 1 <= c <= k:
                raise ParseError(f"coordinate {c} outside 1..{k}", no)
        if (i, j) == (i2, j2):
            raise ParseError("self-edge", no)
        edges.append(((i, j), (i2, j2)))
    return CliqueInstance(k, frozenset(edges))


def write_clique(instance: CliqueInstance) -> str:
    out = [f"kxk {instance.k}"]
    for (i, j), (i2, j2) in sorted(instance.edges):
        out.append(f"edge {i} {j} {i2} {j2}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# permutation SAT format


def parse_permsat(text: str) -> Formula:
    return _wrap(_parse_permsat, text)


def _parse_permsat(text: str) -> Formula:
    no, toks, rest = _header(text, "psat")
    opts = _options(toks[1:], no, ("vars", "alpha", "beta"))
    if set(opts) != {"vars", "alpha", "beta"}:
        raise ParseError("header must give vars=, alpha= and beta=", no)
    k = _int(opts["vars"], no, "vars")
    alpha = _int(opts["alpha"], no, "alpha")
    beta = _int(opts["beta"], no, "beta")
    if k < 1 or alpha < 2 or beta < 1:
        raise ValidationError(f"invalid header values vars={k} alpha={alpha} beta={beta}")
    names: dict[int, str] = {}
    clauses = []
    for no, toks in rest:
        if toks[0] == "var":
            if len(toks) != 3:
                raise ParseError("var lines are 'var <i> <name>'", no)
            i = _int(toks[1], no, "variable")
            if not 1 <= i <= k:
                raise ParseError(f"variable {i} outside 1..{k}", no)
            if i in names:
                raise ParseError(f"variable {i} named twice", no)
            names[i] = toks[2]
            continue
        if toks[0] != "clause":
            raise ParseError(f"unknown directive {toks[0]!r}", no)
        body = " ".join(toks[1:])
        if not body:
            raise ParseError("empty clause", no)
        clause = []
        for part in body.split("|"):
            part = part.strip()
            if not part:
                raise ParseError("empty literal", no)
            lit = tuple(_int(t.strip(), no, "variable") for t in part.split("<"))
            if len(lit) < 2:
                raise ParseError(f"literal {part!r} compares fewer than two variables", no)
            if len(lit) > alpha:
                raise ParseError(f"literal {part!r} longer than alpha={alpha}", no)
            if any(not 1 <= x <= k for x in lit):
                raise ParseError(f"literal {part!r} uses a variable outside 1..{k}", no)
            if len(set(lit)) != len(lit):
                raise ParseError(f"literal {part!r} repeats a variable", no)
            clause.append(lit)
        if len(clause) > beta:
            raise ParseError(f"clause of width {len(clause)} exceeds beta={beta}", no)
        clauses.append(tuple(clause))
    if names and len(names) != k:
        raise ValidationError(f"names given for {len(names)} of {k} variables")
    name_table = tuple(names[i] for i in range(1, k + 1)) if names else None
    return Formula(k, tuple(clauses), alpha=alpha, beta=beta, names=name_table)


def write_permsat(formula: Formula) -> str:
    out = [f"psat vars={formula.variable_count} alpha={formula.alpha} beta={formula.beta}"]
    if formula.names is not None:
        for i, name in enumerate(formula.names, start=1):
            _check_token(name)
            out.append(f"var {i} {name}")
    for clause in formula.clauses:
        out.append("clause " + " | ".join("<".join(map(str, lit)) for lit in clause))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# game format


def _check_token(name: str) -> None:
    if not name or any(ch.isspace() for ch in name) or "#" in name:
        raise ValidationError(f"name {name!r} cannot be written as a single token")


def parse_game(text: str) -> tuple[Arena, Objective]:
    return _wrap(_parse_game, text)


def _parse_game(text: str):
    no, toks, rest = _header(text, "game")
    if len(toks) < 2 or toks[1] not in GAME_KINDS:
        raise ParseError(f"game kind must be one of {', '.join(GAME_KINDS)}", no)
    kind = toks[1]
    allowed = {
        "rabin": ("vertices", "pairs"),
        "parity": ("vertices", "colors"),
        "muller": ("vertices", "colors", "family"),
        "genparity": ("vertices", "colors", "dim"),
    }[kind]
    opts = _options(toks[2:], no, allowed)
    required = set(allowed) - {"family"}
    if not required <= set(opts):
        raise ParseError(f"header needs {', '.join(sorted(required))}", no)
    n = _int(opts["vertices"], no, "vertices")
    if n < 1:
        raise ValidationError("vertex count must be positive")
    header_no = no

    owners: dict[int, Player] = {}
    names: dict[int, str] = {}
    colours: dict[int, str] = {}
    colour_line: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    edge_set: set[tuple[int, int]] = set()
    init = None
    pairs: dict[int, tuple[frozenset, frozenset]] = {}
    family: list[frozenset[int]] = []

    def vertex_ref(tok, no):
        v = _int(tok, no, "vertex")
        if not 0 <= v < n:
            raise ParseError(f"vertex {v} outside 0..{n - 1}", no)
        return v

    for no, toks in rest:
        head = toks[0]
        if head == "vertex":
            if len(toks) < 3:
                raise ParseError("vertex lines are 'vertex <id> owner=<S|A> ...'", no)
            v = vertex_ref(toks[1], no)
            if v in owners:
                raise ParseError(f"vertex {v} declared twice", no)
            vopts = _options(toks[2:], no, ("owner", "colors", "name"))
            if vopts.get("owner") not in ("S", "A"):
                raise ParseError("owner must be S or A", no)
            owners[v] = STEVEN if vopts["owner"] == "S" else AUDREY
            if "name" in vopts:
                if not vopts["name"]:
                    raise ParseError("empty name", no)
                names[v] = vopts["name"]
            if "colors" in vopts:
                if kind == "rabin":
                    raise ParseError("rabin vertices carry no colours", no)
                colours[v] = vopts["colors"]
                colour_line[v] = no
            elif kind != "rabin":
                raise ParseError(f"vertex {v} needs colors=", no)
        elif head == "edge":
            if len(toks) != 3:
                raise ParseError("edge lines are 'edge <u> <v>'", no)
            e = (vertex_ref(toks[1], no), vertex_ref(toks[2], no))
            if e in edge_set:
                raise ParseError(f"duplicate edge {e[0]} -> {e[1]}", no)
            edge_set.add(e)
            edges.append(e)
        elif head == "init":
            if len(toks) != 2:
                raise ParseError("init lines are 'init <u>'", no)
            if init is not None:
                raise ParseError("initial vertex given twice", no)
            init = vertex_ref(toks[1], no)
        elif head == "pair":
            if kind != "rabin":
                raise ParseError("pair lines only belong to rabin games", no)
            if len(toks) != 4:
                raise ParseError("pair lines are 'pair <i> G=<ids> B=<ids>'", no)
            i = _int(toks[1], no, "pair index")
            if i in pairs:
                raise ParseError(f"pair {i} given twice", no)
            popts = _options(toks[2:], no, ("G", "B"))
            if set(popts) != {"G", "B"}:
                raise ParseError("pair lines need G= and B=", no)
            g = [vertex_ref(str(x), no) for x in _int_list(popts["G"], no, "vertex")]
            b = [vertex_ref(str(x), no) for x in _int_list(popts["B"], no, "vertex")]
            pairs[i] = (frozenset(g), frozenset(b))
        elif head == "family":
            if kind != "muller":
                raise ParseError("family lines only belong to muller games", no)
            if opts.get("family") == "rabin":
                raise ParseError("family lines conflict with family=rabin", no)
            if len(toks) != 2:
                raise ParseError("family lines are 'family <c1,c2,...>' or 'family -'", no)
            member = frozenset(_int_list(toks[1], no, "colour"))
            if member in family:
                raise ParseError("family member listed twice", no)
            family.append(member)
        else:
            raise ParseError(f"unknown directive {head!r}", no)

    if len(owners) != n:
        raise ValidationError(f"header declares {n} vertices, found {len(owners)} vertex lines")
    if init is None:
        raise ValidationError("missing init line")
    arena = Arena.from_edges(
        [owners[v] for v in range(n)],
        edges,
        initial=init,
        names=[names.get(v, str(v)) for v in range(n)] if names else None,
    )

    if kind == "rabin":
        k = _int(opts["pairs"], header_no, "pairs")
        if sorted(pairs) != list(range(1, k + 1)):
            raise ValidationError(f"header declares {k} pairs, found indices {sorted(pairs)}")
        objective: Objective = RabinObjective(tuple(pairs[i] for i in range(1, k + 1)))
    elif kind == "parity":
        K = _int(opts["colors"], header_no, "colors")
        if K < 1:
            raise ValidationError("colour count must be positive")
        cols = []
        for v in range(n):
            if not re.fullmatch(r"[0-9]+", colours[v]):
                raise ParseError("parity colours are single integers", colour_line[v])
            cols.append(int(colours[v]))
        objective = ParityObjective(tuple(cols), K)
    elif kind == "muller":
        K = _int(opts["colors"], header_no, "colors")
        sets = [frozenset(_int_list(colours[v], colour_line[v], "colour")) for v in range(n)]
        fam = opts.get("family")
        if fam not in (None, "rabin"):
            raise ParseError("family= only accepts 'rabin'", header_no)
        if fam == "rabin":
            if K % 2:
                raise ValidationError("family=rabin needs an even colour count")
            objective = MullerObjective(tuple(sets), K, rabin_degree=K // 2)
        else:
            objective = MullerObjective(tuple(sets), K, family=frozenset(family))
    else:
        K = _int(opts["colors"], header_no, "colors")
        d = _int(opts["dim"], header_no, "dim")
        if d < 1:
            raise ValidationError("dimension must be positive")
        vecs = []
        for v in range(n):
            vec = _int_list(colours[v], colour_line[v], "colour")
            if len(vec) != d:
                raise ValidationError(f"vertex {v} has {len(vec)} colours, header says dim={d}")
            vecs.append(tuple(vec))
        if K < 1:
            raise ValidationError("colour count must be positive")
        objective = GenParityObjective(tuple(vecs), K)
    objective.validate(n)
    return arena, objective


def game_kind(objective: Objective) -> str:
    if isinstance(objective, RabinObjective):
        return "rabin"
    if isinstance(objective, ParityObjective):
        return "parity"
    if isinstance(objective, MullerObjective):
        return "muller"
    if isinstance(objective, GenParityObjective):
        return "genparity"
    raise TypeError(f"not an objective: {objective!r}")


def _ids(vs) -> str:
    return ",".join(str(v) for v in sorted(vs))


def write_game(arena: Arena, objective: Objective) -> str:
    n = arena.vertex_count
    objective.validate(n)
    kind = game_kind(objective)
    if kind == "rabin":
        header = f"game rabin vertices={n} pairs={objective.degree}"
    elif kind == "parity":
        header = f"game parity vertices={n} colors={objective.max_colour}"
    elif kind == "muller":
        header = f"game muller vertices={n} colors={objective.num_colours}"
        if objective.family is None:
            header += " family=rabin"
    else:
        header = f"game genparity vertices={n} dim={objective.dimension} colors={objective.max_colour}"
    out = [header]
    for v in range(n):
        line = f"vertex {v} owner={arena.owner[v].value}"
        if kind == "parity":
            line += f" colors={objective.colours[v]}"
        elif kind == "muller":
            line += f" colors={_ids(objective.colouring[v]) or '-'}"
        elif kind == "genparity":
            line += f" colors={','.join(map(str, objective.vectors[v]))}"
        if arena.names is not None:
            _check_token(arena.names[v])
            line += f" name={arena.names[v]}"
        out.append(line)
    out += [f"edge {u} {v}" for u, v in arena.edges()]
    out.append(f"init {arena.initial}")
    if kind == "rabin":
        for i, (g, b) in enumerate(objective.pairs, start=1):
            out.append(f"pair {i} G={_ids(g)} B={_ids(b)}")
    elif kind == "muller" and objective.family is not None:
        for member in sorted(objective.family, key=lambda s: (len(s), sorted(s))):
            out.append(f"family {_ids(member) or '-'}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# any format


def sniff(text: str) -> str:
    """Kind of instance in ``text``: clique, psat, or one of the game kinds."""
    for no, toks in _lines(text):
        if toks[0] == "kxk":
            return "clique"
        if toks[0] == "psat":
            return "psat"
        if toks[0] == "game" and len(toks) > 1 and toks[1] in GAME_KINDS:
            return toks[1]
        raise ParseError(f"unrecognised header {toks[0]!r}", no)
    raise ParseError("empty input")


def parse_instance(text: str):
    kind = sniff(text)
    if kind == "clique":
        return kind, parse_clique(text)
    if kind == "psat":
        return kind, parse_permsat(text)
    return kind, parse_game(text)


def write_instance(kind: str, instance) -> str:
    if kind == "clique":
        return write_clique(instance)
    if kind == "psat":
        return write_permsat(instance)
    return write_game(*instance)


def read_instance(path: str | Path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc.reason})") from exc
    return parse_instance(text)


# ---------------------------------------------------------------------------
# DOT


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(arena: Arena, objective: Objective | None = None, highlight_pair: int = 1) -> str:
    """Graphviz text; Steven's vertices are boxes, Audrey's diamonds.

    For Rabin objectives, members of ``G_i`` for the highlighted pair are
    filled green and members of ``B_i`` blue (both: striped); every vertex
    also lists its pair memberships.
    """
    lines = ["digraph arena {", "  rankdir=LR;", '  node [fontname="Helvetica"];']
    for v in range(arena.vertex_count):
        label = arena.name(v)
        attrs = ["shape=box" if arena.owner[v] is STEVEN else "shape=diamond"]
        notes = []
        if isinstance(objective, RabinObjective):
            for i, (g, b) in enumerate(objective.pairs, start=1):
                if v in g:
                    notes.append(f"G{i}")
                if v in b:
                    notes.append(f"B{i}")
            if 1 <= highlight_pair <= objective.degree:
                g, b = objective.pairs[highlight_pair - 1]
                if v in g and v in b:
                    attrs.append('style=striped fillcolor="palegreen:lightblue"')
                elif v in g:
                    attrs.append('style=filled fillcolor="palegreen"')
                elif v in b:
                    attrs.append('style=filled fillcolor="lightblue"')
        elif isinstance(objective, ParityObjective):
            notes.append(str(objective.colours[v]))
        elif isinstance(objective, MullerObjective):
            notes.append("{" + _ids(objective.colouring[v]) + "}")
        elif isinstance(objective, GenParityObjective):
            notes.append("(" + ",".join(map(str, objective.vectors[v])) + ")")
        if notes:
            attrs.append(f'xlabel="{_dot_escape(" ".join(notes))}"')
        if v == arena.initial:
            attrs.append("penwidth=2")
        lines.append(f'  v{v} [label="{_dot_escape(label)}" {" ".join(attrs)}];')
    for u, v in arena.edges():
        lines.append(f"  v{u} -> v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
