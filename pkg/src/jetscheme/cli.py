"""Command line interface: ``jetscheme <command> SESSION [flags]``.

Exit status is 0 on success, 1 for bad input and 2 when a budget or the
working precision runs out.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arcs import (
    arc_fiber_homotopy,
    fiber_profile_auto,
    jet_fiber_dims,
    jet_profile,
    lci_cotangent_presentation,
)
from .errors import BudgetExceeded, InputError, JetSchemeError
from .groebner import buchberger, krull_dim
from .invariants import (
    ArcSite,
    embdim_arc_direct,
    embdim_formula,
    embdim_jet_direct,
    etale_transform_check,
    generic_projection,
    jet_codim_partial,
    jacobian_order,
    stable_value,
)
from .jets import JetContext, jet_ideal
from .koszul import classicality_test, graded_homology_rank, jet_generator_degrees, koszul_complex
from .polynomials import LEX, MonomialOrder
from .results import Certified
from .session import load_session, validate_report
from .support import csi_ideal, csi_order_via_profile, ord_along_arc

COMMANDS = ("jet", "gb", "dim", "classical", "koszul", "arc", "csi", "embdim", "project", "etale-check")
HELP = {
    "jet": "print the jet equations f^(q)",
    "gb": "reduced Groebner basis of the jet ideal",
    "dim": "Krull dimension of the jet scheme",
    "classical": "compare the jet-scheme dimension with (n+1) dim X",
    "koszul": "graded homology ranks of the jet Koszul complex",
    "arc": "fiber profile of an arc and jet-fiber dimensions",
    "csi": "support-ideal orders along an arc, two ways",
    "embdim": "embedding dimension of a jet or arc, several ways",
    "project": "certified generic linear projection",
    "etale-check": "embedding dimension change along the session morphism",
}


def _range(text):
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return lo, hi


def build_parser():
    p = argparse.ArgumentParser(prog="jetscheme", description="Jet schemes, arc fibers and singularity invariants.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        s = sub.add_parser(name, help=HELP[name])
        s.add_argument("session", help="session JSON file")
        s.add_argument("--level", type=int, help="jet level n")
        s.add_argument("--window", type=_range, help="levels a..b")
        s.add_argument("--precision", type=int, help="series precision N")
        s.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
        s.add_argument("--json", action="store_true", help="JSON report")
        s.add_argument("--seed", type=int)
        s.add_argument("--budget", type=int, help="pair budget (attempts for project)")
        s.add_argument("--arc", help="arc name (default: first in the session)")
        if name == "koszul":
            s.add_argument("--degrees", type=_range, default=(0, 8), help="degree window a..b")
            s.add_argument("--index", type=int, default=1, help="homology index i")
    return p


class _Run:
    def __init__(self, args):
        self.args = args
        self.exhausted = False
        self.session = load_session(args.session)
        s = self.session
        if args.budget is not None:
            if args.budget < 1:
                raise InputError("--budget must be positive")
            s.budget.max_pairs = args.budget
            s.projection_attempts = args.budget
        if args.seed is not None:
            s.seed = args.seed
        if args.level is not None and args.level < 0:
            raise InputError("--level must be nonnegative")

    def levels(self, default=(1,)):
        a = self.args
        if a.window:
            return list(range(a.window[0], a.window[1] + 1))
        if a.level is not None:
            return [a.level]
        return list(self.session.levels or default)

    def order(self, ctx):
        if self.args.order == "lex":
            return LEX
        if self.session.weighted:
            return MonomialOrder("wgrevlex", ctx.base_weights)
        return MonomialOrder("grevlex")

    def arc(self, level=0):
        arc = self.session.arc(self.args.arc)
        N = self.args.precision or self.session.default_precision(level)
        return arc.with_prec(max(N, arc.prec))

    # -- commands --
    def jet(self):
        out = []
        s = self.session
        for n in self.levels():
            ji = jet_ideal(s.gens, JetContext(s.ring, n))
            out.append({
                "level": n,
                "generators": [
                    {"j": j, "q": q, "polynomial": str(p), "zero": not p.terms}
                    for (j, q), p in zip(ji.labels, ji)
                ],
            })
        return out

    def gb(self):
        out = []
        s = self.session
        for n in self.levels(default=(0,)):
            ctx = JetContext(s.ring, n)
            order = self.order(ctx)
            gb = buchberger(jet_ideal(s.gens, ctx).nonzero() or [ctx.ring.zero], order, ring=ctx.ring, budget=s.budget)
            out.append({
                "level": n,
                "order": self.args.order,
                "size": Certified(len(gb)).to_json(),
                "basis": [str(g) for g in gb],
            })
        return out

    def dim(self):
        out = []
        s = self.session
        for n in self.levels(default=(0,)):
            ctx = JetContext(s.ring, n)
            try:
                gb = buchberger(jet_ideal(s.gens, ctx).nonzero() or [ctx.ring.zero], self.order(ctx), ring=ctx.ring, budget=s.budget)
                d = krull_dim(gb, s.budget)
                val = Certified(d if d != float("-inf") else "-inf")
            except BudgetExceeded as exc:
                self.exhausted = True
                val = Certified(None, False, [str(exc)])
            out.append({"level": n, "dim": val.to_json()})
        return out

    def classical(self):
        out = []
        s = self.session
        for n in self.levels():
            ctx = JetContext(s.ring, n)
            v = classicality_test(s.gens, ctx, budget=s.budget, order=self.order(ctx))
            row = v.to_json()
            if v.verdict == "Inconclusive":
                self.exhausted = True
            row["dim"] = Certified(row["dim"], v.verdict != "Inconclusive", list(v.notes)).to_json()
            out.append(row)
        return out

    def koszul(self):
        out = []
        s = self.session
        lo, hi = self.args.degrees
        i = self.args.index
        for n in self.levels():
            ctx = JetContext(s.ring, n)
            ji = jet_ideal(s.gens, ctx)
            degs = jet_generator_degrees(ji, "base")
            K = koszul_complex(list(ji), ctx.ring, ctx.base_weights, degs)
            ranks = [
                {"degree": k, "rank": Certified(graded_homology_rank(K, i, k, s.budget)).to_json()}
                for k in range(lo, hi + 1)
            ]
            out.append({"level": n, "index": i, "homology": ranks})
        return out

    def _profile(self, arc):
        K = lci_cotangent_presentation(self.session.gens, self.session.ring)
        return fiber_profile_auto(K, arc)

    def arc_cmd(self):
        out = []
        for n in self.levels():
            arc = self.arc(n)
            p = self._profile(arc)
            row = {
                "level": n,
                "arc": arc.name,
                "profile": p.to_json(),
                "jet_profile": jet_profile(p, n).to_json(),
                "fiber_dims": {str(i): jet_fiber_dims(p, n, i).to_json() for i in (0, 1)},
                "arc_fiber": {str(i): arc_fiber_homotopy(p, i) for i in (0, 1)},
            }
            out.append(row)
        return out

    def csi(self):
        s = self.session
        arc = self.arc(max(self.levels(default=(0,))))
        K = lci_cotangent_presentation(s.gens, s.ring)
        p = fiber_profile_auto(K, arc)
        N = p.precision
        d = s.ring.nvars - len(s.gens)
        out = []
        # (0, d) and (0, b_0) coincide unless the arc is degenerate
        for i, lv in dict.fromkeys(((0, d), (0, p.b_at(0)), (1, 0))):
            via_p = csi_order_via_profile(p, i, lv, N)
            via_a = ord_along_arc(csi_ideal(K, i, lv), arc, N)
            out.append({
                "level": [i, lv],
                "via_profile": Certified(via_p).to_json(),
                "via_arc": Certified(via_a).to_json(),
                "agree": via_p == via_a,
            })
        return out

    def embdim(self):
        s = self.session
        out = []
        levels = self.levels()
        arc = self.arc(max(levels))
        d = s.ring.nvars - len(s.gens)
        lag = jacobian_order(s.gens, arc, d, arc.prec) if s.gens else None
        for n in levels:
            site = ArcSite(s.gens, arc, n)
            direct = embdim_jet_direct(s.gens, JetContext(s.ring, n), arc)
            formula = embdim_formula(site)
            row = {
                "level": n,
                "trdeg": site.trdeg,
                "jet_direct": Certified(direct).to_json(),
                "jet_formula": formula.to_json(),
            }
            if lag is None or lag.exact:
                m = n + (lag.order if lag else 0)
                row["arc_level"] = Certified(embdim_arc_direct(s.gens, arc.with_prec(max(arc.prec, m + 1)), n, m), True, [f"image at m = {m}"]).to_json()
            else:
                row["arc_level"] = Certified(None, False, ["Jacobian ideal vanishes along the arc"]).to_json()
            row["jet_codim"] = Certified(jet_codim_partial(arc, d, [n])[0][1]).to_json()
            out.append(row)
        if len(out) >= 3:
            tail = {
                "arc_level": stable_value([r["arc_level"]["value"] for r in out]),
                "jet_codim": stable_value([r["jet_codim"]["value"] for r in out]),
            }
            out.append({"stable": {k: Certified(v, v is not None).to_json() for k, v in tail.items()}})
        return out

    def project(self):
        s = self.session
        levels = self.levels()
        arc = self.arc(max(levels))
        pr = generic_projection(s.gens, arc, seed=s.seed, budget=s.projection_attempts)
        beta = pr.target_arc(arc)
        d = pr.d
        lag = jacobian_order(s.gens, arc, d, arc.prec).order if s.gens else 0
        rows = []
        for n in levels:
            m = n + lag
            a = embdim_arc_direct(s.gens, arc.with_prec(max(arc.prec, m + 1)), n, m)
            b = embdim_arc_direct([], beta.with_prec(max(arc.prec, m + 1)), n, m)
            rows.append({"level": n, "source": Certified(a).to_json(), "target": Certified(b).to_json(), "equal": a == b})
        return [{"projection": pr.to_json(), "table": rows}]

    def etale_check(self):
        s = self.session
        target, tgens, images = s.morphism()
        levels = self.levels()
        arc = self.arc(max(levels))
        rep = etale_transform_check(s.gens, arc, tgens, images, target, window=levels)
        for row in rep["table"]:
            for k in ("source", "target", "difference", "source_jet", "target_jet"):
                if k in row:
                    row[k] = Certified(row[k]).to_json()
        rep["ord_jac_f"] = Certified(rep["ord_jac_f"], rep["ord_jac_f"] is not None).to_json()
        st = rep["stable_difference"]
        rep["stable_difference"] = Certified(st, st is not None).to_json()
        return [rep]

    def run(self):
        name = self.args.command
        fn = {"arc": self.arc_cmd, "etale-check": self.etale_check}.get(name) or getattr(self, name)
        return fn()


def _flags(args):
    out = {}
    for k in ("level", "window", "precision", "order", "seed", "budget", "arc", "degrees", "index"):
        v = getattr(args, k, None)
        if v is not None:
            out[k] = list(v) if isinstance(v, tuple) else v
    return out


def _render_value(v):
    if isinstance(v, dict) and set(v) == {"value", "certified", "hypothesis_notes"}:
        txt = _render_value(v["value"])
        if not v["certified"]:
            txt += " (uncertified"
            txt += ": " + "; ".join(v["hypothesis_notes"]) + ")" if v["hypothesis_notes"] else ")"
        return txt
    if isinstance(v, dict) and set(v) == {"order", "exact"}:
        return str(v["order"]) if v["exact"] else f"AtLeast({v['order']})"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_render_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(_render_value(x) for x in v) + "]"
    return str(v)


def render_text(command, results):
    lines = [f"# {command}"]
    for row in results:
        if command == "jet":
            lines.append(f"level {row['level']}:")
            for g in row["generators"]:
                flag = "  (zero)" if g["zero"] else ""
                lines.append(f"  f{g['j'] + 1}^({g['q']}) = {g['polynomial']}{flag}")
            continue
        if command == "gb":
            lines.append(f"level {row['level']} ({row['order']}), {row['size']['value']} elements:")
            lines.extend(f"  {g}" for g in row["basis"])
            continue
        if command == "etale-check" or command == "project":
            for k, v in row.items():
                if k == "table":
                    lines.append("table:")
                    for r in v:
                        lines.append("  " + ", ".join(f"{a}={_render_value(b)}" for a, b in r.items()))
                else:
                    lines.append(f"{k}: {_render_value(v)}")
            continue
        lines.append(", ".join(f"{k}={_render_value(v)}" for k, v in row.items()))
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"command": args.command, "flags": _flags(args), "session": {}, "results": []}
    try:
        r = _Run(args)
        report["session"] = r.session.doc
        report["results"] = r.run()
    except JetSchemeError as exc:
        report["error"] = {"code": exc.code, "message": str(exc), "exit_status": exc.exit_status}
        if args.json:
            sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return exc.exit_status
    if args.json:
        validate_report(report)
        sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render_text(args.command, report["results"]))
    if r.exhausted:
        sys.stderr.write("warning: a budget ran out; some results are uncertified\n")
        return BudgetExceeded.exit_status
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
