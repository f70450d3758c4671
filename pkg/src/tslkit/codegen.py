"""FRP control-block templates from a validated control flow model.

Three notations are emitted: arrowized (Yampa-style ``proc`` blocks),
monadic (threepenny-gui-style, signals combined applicatively inside a
``MonadFix``), and clocked applicative (ClaSH-style recursive bindings).
The text is a pure function of the model and style; correctness is pinned
by golden files and by the interpreter, which implements the same
semantics.

Semantic types are synthesized variables ``t0, t1, ...`` computed by
unifying wire adjacency: ports of the same deduplicated literal share
types across uses, Boolean positions render as ``Bool``.
"""

from __future__ import annotations

from enum import Enum

from .cfm import Cfm, Function, Logic, Mutex, OneHot, Predicate, label_arity, topo_order


class GenStyle(Enum):
    ARROWIZED = "arrow"
    MONADIC = "monad"
    APPLICATIVE = "applicative"


# ---------------------------------------------------------------------------
# Type inference over wires

_BOOL = "#bool"
_SEL = "#sel"


class _Unifier:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def find(self, x: str) -> str:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: str, b: str):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the special markers as the representative
            if rb.startswith("#"):
                ra, rb = rb, ra
            self.parent[rb] = ra


def _literals(m: Cfm) -> dict[str, tuple[int, bool]]:
    """name -> (arity, is_predicate), deduplicated across vertices."""
    out: dict[str, tuple[int, bool]] = {}
    for vid in sorted(m.vertices):
        label = m.vertices[vid]
        if isinstance(label, (Function, Predicate)):
            out[label.name] = (label.arity, isinstance(label, Predicate))
    return out


def _infer(m: Cfm):
    uf = _Unifier()

    def node(x: str) -> str:
        return f"w:{x}"

    for vid in sorted(m.vertices):
        label = m.vertices[vid]
        srcs = m.sources_of(vid)
        if isinstance(label, (Function, Predicate)):
            for i, s in enumerate(srcs):
                uf.union(f"lit:{label.name}:{i}", node(s))
            res = _BOOL if isinstance(label, Predicate) else f"lit:{label.name}:res"
            uf.union(res, node(vid))
            if isinstance(label, Predicate):
                uf.union(f"lit:{label.name}:res", _BOOL)
        elif isinstance(label, Logic):
            uf.union(node(vid), _BOOL)
            for s in srcs:
                uf.union(node(s), _BOOL)
        elif isinstance(label, OneHot):
            uf.union(node(vid), _SEL)
            for s in srcs:
                uf.union(node(s), _BOOL)
        elif isinstance(label, Mutex):
            uf.union(node(srcs[0]), _SEL)
            for s in srcs[1:]:
                uf.union(node(s), node(vid))
    for sink in sorted(m.outputs | m.cells):
        for s in m.sources_of(sink):
            uf.union(node(sink), node(s))

    names: dict[str, str] = {}
    counter = 0

    def render(key: str) -> str:
        nonlocal counter
        root = uf.find(key)
        if root == uf.find(_BOOL):
            return "Bool"
        if root not in names:
            names[root] = f"t{counter}"
            counter += 1
        return names[root]

    lits = _literals(m)
    lit_types: dict[str, tuple[list[str], str]] = {}
    for name in sorted(lits):
        arity, _ = lits[name]
        args = [render(f"lit:{name}:{i}") for i in range(arity)]
        lit_types[name] = (args, render(f"lit:{name}:res"))
    sig_types = {
        s: render(node(s))
        for s in sorted(m.cells) + sorted(m.outputs) + sorted(m.inputs)
    }
    return lit_types, sig_types


def _extra_init_outputs(m: Cfm) -> list[str]:
    """Outputs needing their own initial value in the clocked style: those
    not fed straight from a cell (whose init already covers time 0)."""
    return [o for o in sorted(m.outputs) if m.sources_of(o)[0] not in m.cells]


# ---------------------------------------------------------------------------
# Signatures


def _lit_type(args: list[str], res: str) -> str:
    if not args:
        return res
    return "(" + " -> ".join(args + [res]) + ")"


def gen_signature(m: Cfm, s: GenStyle) -> str:
    lit_types, sig_types = _infer(m)
    lits = _literals(m)
    cells = sorted(m.cells)
    outputs = sorted(m.outputs)
    inputs = sorted(m.inputs)

    rows: list[tuple[str, str]] = []  # (type text, comment)
    if s is GenStyle.ARROWIZED:
        constraint = "(Arrow signal, ArrowLoop signal)" if cells else "Arrow signal"
        if cells:
            rows.append(("(forall p. p -> signal p p)", "cell implementation"))
    elif s is GenStyle.MONADIC:
        constraint = "(MonadFix monad, Applicative signal)"
        if cells:
            rows.append(("(forall p. p -> signal p -> monad (signal p))", "cell implementation"))
    else:
        constraint = "Applicative signal"
        if cells:
            rows.append(("(forall p. p -> signal p -> signal p)", "cell implementation"))

    for name in sorted(lits):
        args, res = lit_types[name]
        rows.append((_lit_type(args, res), name))
    for c in cells:
        rows.append((sig_types[c], f"initial value: {c}"))
    if s is GenStyle.APPLICATIVE:
        for o in _extra_init_outputs(m):
            rows.append((sig_types[o], f"initial value: {o}"))

    if s is GenStyle.ARROWIZED:
        in_prod = _product([sig_types[i] for i in inputs])
        out_prod = _product([sig_types[o] for o in outputs])
        rows.append((f"signal {in_prod} {out_prod}", f"{', '.join(inputs) or '()'} -> {', '.join(outputs) or '()'}"))
    else:
        for i in inputs:
            rows.append((f"signal {sig_types[i]}", f"{i} (input)"))
        out_elems = [(f"signal {sig_types[o]}", f"{o} (output)") for o in outputs]
        rows.extend(_result_rows(out_elems, monadic=s is GenStyle.MONADIC))

    lines = ["control", f"  :: {constraint}"]
    sep = "=>"
    for ty, comment in rows:
        lines.append(f"  {sep} {ty}  -- {comment}")
        sep = "->"
    return "\n".join(lines) + "\n"


def _product(types: list[str]) -> str:
    if not types:
        return "()"
    if len(types) == 1:
        return types[0]
    return "(" + ", ".join(types) + ")"


def _result_rows(elems: list[tuple[str, str]], monadic: bool) -> list[tuple[str, str]]:
    if len(elems) == 1:
        ty, comment = elems[0]
        return [(f"monad ({ty})" if monadic else ty, comment)]
    joined = "( " + ", ".join(ty for ty, _ in elems) + " )"
    if monadic:
        joined = f"monad {joined}"
    comment = ", ".join(c for _, c in elems)
    return [(joined, comment)]


# ---------------------------------------------------------------------------
# Bodies


def _wire_names(m: Cfm) -> dict[str, str]:
    names = {i: f"s_{i}" for i in m.inputs}
    names.update({c: f"c_{c}" for c in m.cells})
    for k, vid in enumerate(topo_order(m)):
        names[vid] = f"v{k}"
    return names


def _phases(m: Cfm) -> tuple[list[str], list[str], list[str]]:
    order = topo_order(m)
    apps = [v for v in order if isinstance(m.vertices[v], (Function, Predicate))]
    ctrl = [v for v in order if isinstance(m.vertices[v], (Logic, OneHot))]
    sels = [v for v in order if isinstance(m.vertices[v], Mutex)]
    return apps, ctrl, sels


def _applicative_expr(m: Cfm, vid: str, w: dict[str, str]) -> str:
    label = m.vertices[vid]
    args = [w[s] for s in m.sources_of(vid)]
    if isinstance(label, (Function, Predicate)):
        head = label.name
    elif isinstance(label, Logic):
        head = {"and": "(&&)", "or": "(||)", "not": "not"}[label.op]
    elif isinstance(label, OneHot):
        head = f"oneHot{label.k}"
    else:
        head = f"mutex{label.k}"
    if not args:
        return f"pure {head}"
    out = f"{head} <$> {args[0]}"
    for a in args[1:]:
        out += f" <*> {a}"
    return out


def _arrow_line(m: Cfm, vid: str, w: dict[str, str]) -> str:
    label = m.vertices[vid]
    args = [w[s] for s in m.sources_of(vid)]
    if isinstance(label, (Function, Predicate)):
        head = label.name
    elif isinstance(label, Logic):
        head = {"and": "(&&)", "or": "(||)", "not": "not"}[label.op]
    elif isinstance(label, OneHot):
        head = f"oneHot{label.k}"
    else:
        head = f"mutex{label.k}"
    if not args:
        return f"{w[vid]} <- arr (const {head}) -< ()"
    if len(args) == 1:
        return f"{w[vid]} <- arr {head} -< {args[0]}"
    binders = ", ".join(f"x{i}" for i in range(len(args)))
    applied = " ".join([head] + [f"x{i}" for i in range(len(args))])
    return f"{w[vid]} <- arr (\\({binders}) -> {applied}) -< ({', '.join(args)})"


def _helper_note(m: Cfm) -> list[str]:
    ks_onehot = sorted({l.k for l in m.vertices.values() if isinstance(l, OneHot)})
    ks_mutex = sorted({l.k for l in m.vertices.values() if isinstance(l, Mutex)})
    if not ks_onehot and not ks_mutex:
        return []
    helpers = [f"oneHot{k}" for k in ks_onehot] + [f"mutex{k}" for k in ks_mutex]
    return [
        f"-- requires helpers: {', '.join(helpers)}",
        "--   oneHotK turns k Boolean controls (exactly one true) into an index,",
        "--   mutexK selects among k signals by that index.",
        "",
    ]


def gen_control(m: Cfm, s: GenStyle) -> str:
    w = _wire_names(m)
    apps, ctrl, sels = _phases(m)
    cells = sorted(m.cells)
    outputs = sorted(m.outputs)
    inputs = sorted(m.inputs)
    lits = sorted(_literals(m))

    params = (["cellIm"] if cells else []) + lits + [f"init_{c}" for c in cells]
    if s is GenStyle.APPLICATIVE:
        params += [f"init_{o}" for o in _extra_init_outputs(m)]

    def out_expr() -> str:
        refs = [w[m.sources_of(o)[0]] for o in outputs]
        return _product(refs)

    lines = _helper_note(m)

    if s is GenStyle.APPLICATIVE:
        head = " ".join(["control"] + params + [f"s_{i}" for i in inputs])
        bindings = []
        for c in cells:  # previous-step values
            bindings.append(f"c_{c} = cellIm init_{c} {w[m.sources_of(c)[0]]}")
        for vid in apps + ctrl + sels:
            bindings.append(f"{w[vid]} = {_applicative_expr(m, vid, w)}")
        lines.append(f"{head} = {out_expr()}")
        if bindings:
            lines.append("  where")
            lines.extend(f"    {b}" for b in bindings)
    elif s is GenStyle.MONADIC:
        head = " ".join(["control"] + params + [f"s_{i}" for i in inputs])
        vertex_lines = [
            f"{w[vid]} = {_applicative_expr(m, vid, w)}" for vid in apps + ctrl + sels
        ]
        if cells:
            lines.append(f"{head} = mdo")
            for c in cells:
                lines.append(f"  c_{c} <- cellIm init_{c} {w[m.sources_of(c)[0]]}")
            if vertex_lines:
                lines.append(f"  let {vertex_lines[0]}")
                lines.extend(f"      {v}" for v in vertex_lines[1:])
            lines.append(f"  return {out_expr()}")
        else:
            lines.append(f"{head} =")
            if vertex_lines:
                lines.append(f"  let {vertex_lines[0]}")
                lines.extend(f"      {v}" for v in vertex_lines[1:])
                lines.append(f"  in return {out_expr()}")
            else:
                lines.append(f"  return {out_expr()}")
    else:  # arrowized
        head = " ".join(["control"] + params)
        in_pat = _product([f"s_{i}" for i in inputs])
        body = []
        for c in cells:
            body.append(f"c_{c} <- cellIm init_{c} -< {w[m.sources_of(c)[0]]}")
        for vid in apps + ctrl + sels:
            body.append(_arrow_line(m, vid, w))
        lines.append(f"{head} =")
        lines.append(f"  proc {in_pat} -> do")
        if body and cells:
            lines.append("    rec")
            lines.extend(f"      {b}" for b in body)
        else:
            lines.extend(f"    {b}" for b in body)
        lines.append(f"    returnA -< {out_expr()}")

    return "\n".join(lines) + "\n"


def generate(m: Cfm, s: GenStyle) -> str:
    """Full generated module text: signature plus body."""
    return gen_signature(m, s) + gen_control(m, s)
