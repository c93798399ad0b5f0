"""Command-line front end. Each subcommand wraps one library call.

Exit codes: 0 success, 1 domain error (``error: <code>: <message>`` on
stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from pathlib import Path

from . import bott_samelson as bs
from . import circular as circ
from . import cyclic_quiver as cq
from . import lusztig_phi as lp
from .affine_weyl import (
    ReducedWord,
    bruhat_leq,
    component_index,
    evaluate_word,
    greedy_reduced_word,
    length,
    parse_window,
)
from .errors import AffSchubError, ParseError
from .field import Field
from .lattice import enumerate_flag_points, predicted_point_count
from .wiring import build_diagram, render


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


# ----------------------------------------------------------------- helpers

def _perm(text: str, n: int | None):
    if n is None:
        n = text.count(",") + 1
    return parse_window(text, n)


def _payload(text: str):
    """Inline JSON, or ``@path`` to read it from a file."""
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as e:
            raise ParseError(f"cannot read {text[1:]}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}") from None


def _letters(text: str) -> tuple[int, ...]:
    text = text.strip().strip("[]")
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"expected letters like 2,1,2,0, got {text!r}") from None


def _word_json(w: ReducedWord) -> dict:
    return {"n": w.n, "sigma_power": w.sigma_power, "letters": list(w.letters)}


# ---------------------------------------------------------------- commands

def cmd_len(a):
    p = _perm(a.window, a.n)
    v = length(p)
    return {"window": list(p.window), "length": v} if a.json else str(v)


def cmd_word(a):
    p = _perm(a.window, a.n)
    w = greedy_reduced_word(p)
    return _word_json(w) if a.json else str(w)


def cmd_bruhat(a):
    p, q = _perm(a.p, a.n), _perm(a.q, a.n)
    v = bruhat_leq(p, q)
    return {"leq": v} if a.json else str(v).lower()


def cmd_wiring(a):
    p = _perm(a.window, a.n)
    d = build_diagram(p)
    if a.json:
        return {
            "window": list(p.window),
            "word": _word_json(d.word),
            "crossings": d.crossing_count,
            "wires": [{"start": w.start, "end": w.end, "winding": w.winding} for w in d.wires],
            "heights": [list(h) for h in d.heights],
        }
    return render(d, a.format).rstrip("\n")


def cmd_phi(a):
    F = Field(a.q)
    N = lp.NilpotentMatrix(_payload(a.matrix), F)
    b = lp.jordan_type(N)
    prof = lp.cell_profile(b)
    L = lp.phi(N)
    out = {
        "jordan_type": list(b.b),
        "c": list(prof.c),
        "cprime": list(prof.cprime),
        "profile": list(lp.t_power_profile(L)),
        "in_cell": lp.verify_phi_cell(N),
        "lattice": L.to_json(),
    }
    if a.json:
        return out
    return "\n".join([
        f"jordan_type={out['jordan_type']}",
        f"c={out['c']}",
        f"cprime={out['cprime']}",
        f"profile={out['profile']}",
        f"in_cell={str(out['in_cell']).lower()}",
    ])


def cmd_psi(a):
    M = cq.QuiverRep.from_json(_payload(a.rep))
    f = cq.psi(M)
    r = cq.rank_table(M)
    p = cq.orbit_permutation(r)
    ok = cq.psi_image_conditions(f, M.dims, r)
    if a.json:
        return {"flag": f.to_json(), "conditions": ok, "orbit_permutation": list(p.window)}
    return f"conditions={str(ok).lower()}\norbit_permutation={p}"


def cmd_ranks(a):
    M = cq.QuiverRep.from_json(_payload(a.rep))
    r = cq.rank_table(M)
    m = r.multiplicities()
    if a.json:
        return {
            "ranks": r.to_json()["r"],
            "multiplicities": {f"{j},{k}": v for (j, k), v in sorted(m.items())},
        }
    lines = [f"r[{j},{k}]={v}" for (j, k), v in sorted(r.r.items())]
    lines += [f"m[{j},{k}]={v}" for (j, k), v in sorted(m.items())]
    return "\n".join(lines)


def cmd_components(a):
    perms = cq.component_permutations(_letters(a.d))
    if a.json:
        return {"d": list(_letters(a.d)), "components": [list(p.window) for p in perms]}
    return "\n".join(str(p) for p in perms)


def cmd_pic(a):
    p = circ.pi_c(a.a, a.b, a.c)
    if a.json:
        return {"window": list(p.window), "length": length(p)}
    return f"{p}\nlen={length(p)}"


def cmd_cable(a):
    w = circ.cable_word(a.a, a.b, a.c)
    ok = evaluate_word(w) == circ.pi_c(a.a, a.b, a.c)
    if a.json:
        return {**_word_json(w), "evaluates_to_pi_c": ok}
    return f"{w}\nletters={len(w)}"


def cmd_count(a):
    p = _perm(a.window, a.n)
    got = enumerate_flag_points(p, a.q, a.mode, a.opposite)
    if a.json:
        out = {"count": got}
        if not a.opposite:
            out["predicted"] = predicted_point_count(p, a.q, a.mode)
        return out
    return str(got)


def cmd_bs(a):
    w = ReducedWord(a.n, a.sigma, _letters(a.word))
    d = bs.build_bs(w)
    got = bs.count_bs_points(d, a.q, a.opposite)
    if a.json:
        return {**d.to_json(), "q": a.q, "opposite": a.opposite, "count": got,
                "target": list(d.target.window), "component": component_index(d.target)}
    return str(got)


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    p = _Parser(prog="affschub", description="Affine Schubert calculus toolkit.", parents=[common])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_, parents=[common])
        s.set_defaults(fn=fn)
        return s

    def nflag(s):
        s.add_argument("-n", type=int, default=None, help="period (defaults to window size)")

    s = add("len", cmd_len, "Coxeter length of a window")
    nflag(s)
    s.add_argument("window")
    s = add("word", cmd_word, "a reduced word for a window")
    nflag(s)
    s.add_argument("window")
    s = add("bruhat", cmd_bruhat, "test p <= q in Bruhat order")
    nflag(s)
    s.add_argument("p")
    s.add_argument("q")
    s = add("wiring", cmd_wiring, "draw the wiring diagram")
    nflag(s)
    s.add_argument("window")
    s.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    s = add("phi", cmd_phi, "Lusztig's lattice of a nilpotent matrix")
    s.add_argument("matrix", help="JSON rows or @file")
    s.add_argument("-q", type=int, default=0, help="field size (0 = rationals)")
    s = add("psi", cmd_psi, "lattice flag of a cyclic quiver representation")
    s.add_argument("rep", help='JSON {"d": [...], "mats": [...], "q": q} or @file')
    s = add("ranks", cmd_ranks, "rank table and multiplicities of a representation")
    s.add_argument("rep", help="JSON or @file")
    s = add("components", cmd_components, "component permutations for a dimension vector")
    s.add_argument("-d", required=True, help="dimension vector, e.g. 1,1,1")
    for name, fn, help_ in (
        ("pic", cmd_pic, "the permutation of the open circular orbit"),
        ("cable", cmd_cable, "the cable reduced word"),
    ):
        s = add(name, fn, help_)
        s.add_argument("-a", type=int, required=True)
        s.add_argument("-b", type=int, required=True)
        s.add_argument("-c", type=int, required=True)
    s = add("count", cmd_count, "count F_q-points of a Schubert cell or variety")
    nflag(s)
    s.add_argument("window")
    s.add_argument("-q", type=int, default=2)
    s.add_argument("--mode", choices=["cell", "variety"], default="cell")
    s.add_argument("--opposite", action="store_true")
    s = add("bs", cmd_bs, "count F_q-points of a Bott-Samelson diagram")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--sigma", type=int, default=0, help="power of the shift prefix")
    s.add_argument("word", help="letters, e.g. 2,1,2,0")
    s.add_argument("-q", type=int, default=2)
    s.add_argument("--opposite", action="store_true")
    return p


def run(argv) -> tuple[int, str, str]:
    """Returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    out = io.StringIO()
    try:
        with contextlib.redirect_stdout(out):
            args = parser.parse_args(list(argv))
    except UsageError as e:
        return 2, "", str(e)
    except SystemExit as e:  # --help
        return int(e.code or 0), out.getvalue(), ""
    try:
        result = args.fn(args)
    except AffSchubError as e:
        return 1, "", f"error: {e}\n"
    except ValueError as e:
        return 1, "", f"error: domain_error: {e}\n"
    if args.json:
        return 0, json.dumps(result, sort_keys=True) + "\n", ""
    return 0, f"{result}\n", ""


def main(argv=None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
