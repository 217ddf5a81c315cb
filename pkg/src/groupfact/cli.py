"""The ``groupfact`` command line tool.

Verbs: verify-construction, search-factorizations, check-table, zsigmondy,
common-divisor, check-graph, coset-graph, report-all.  Every run echoes its
resolved configuration on a ``# config:`` line; records are tab-separated
and sorted, so outputs are stable enough for golden-file testing.  No
timestamps are emitted unless ``--timestamp`` asks for one (it goes on a
``#`` header line, never in the body).

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage,
3 bad input file (messages carry line numbers), 4 internal invariant
violation.
"""

import argparse
import os
import sys
from datetime import datetime, timezone

from . import arcgraph, constructions, factorlab, numth, permcore
from .gfmat import parse_mgp, vec_mat

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

MGP_POINT_LIMIT = 10 ** 5


class InputFileError(Exception):
    pass


# ---------------------------------------------------------------------------
# group loading

def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise InputFileError("%s: %s" % (path, e.strerror or e))


def _parse_certify_claims(text, source):
    """Claims on ``# certify:`` comment lines, as a dict."""
    claims = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line.startswith("#"):
            continue
        body = line.lstrip("#").strip()
        if not body.startswith("certify:"):
            continue
        for tok in body[len("certify:"):].split():
            if "=" not in tok:
                raise InputFileError("%s:%d: malformed certify token %r"
                                     % (source, ln, tok))
            key, val = tok.split("=", 1)
            if key == "order":
                try:
                    claims["order"] = int(val)
                except ValueError:
                    raise InputFileError("%s:%d: non-integer order claim"
                                         % (source, ln))
            elif key == "simple":
                claims["simple"] = val.lower() == "true"
            else:
                raise InputFileError("%s:%d: unknown certify key %r"
                                     % (source, ln, key))
    return claims


def _certify(group, claims, source):
    if "order" in claims and group.order() != claims["order"]:
        raise InputFileError("%s: certified order %d, file gives %d"
                             % (source, claims["order"], group.order()))
    if "simple" in claims:
        if group.is_simple() != claims["simple"]:
            raise InputFileError("%s: simplicity claim %s fails"
                                 % (source, claims["simple"]))


def _mgp_to_perm_group(field, mats, seeds, source):
    """Permutation image of the matrix group on a closed set of row vectors."""
    dim = len(mats[0])
    if seeds is None:
        if field.q ** dim > MGP_POINT_LIMIT:
            raise InputFileError(
                "%s: %d^%d vectors exceed the %d point limit; pass --seeds"
                % (source, field.q, dim, MGP_POINT_LIMIT))
        pts = []
        for code in range(1, field.q ** dim):
            v, c = [], code
            for _ in range(dim):
                v.append(c % field.q)
                c //= field.q
            pts.append(tuple(v))
    else:
        pts = list(seeds)
        seen = set(pts)
        i = 0
        while i < len(pts):
            v = pts[i]
            i += 1
            for A in mats:
                w = vec_mat(field, v, A)
                if w not in seen:
                    seen.add(w)
                    pts.append(w)
            if len(pts) > MGP_POINT_LIMIT:
                raise InputFileError("%s: seed orbit exceeds %d points"
                                     % (source, MGP_POINT_LIMIT))
        pts.sort()
    index = {v: i for i, v in enumerate(pts)}
    gens = []
    for A in mats:
        images = []
        for v in pts:
            w = vec_mat(field, v, A)
            if w not in index:
                raise InputFileError("%s: seed set is not closed under the "
                                     "generators" % source)
            images.append(index[w])
        gens.append(permcore.Permutation(images))
    return permcore.PermGroup(gens, len(pts))


def load_group(path, seeds=None):
    """Load a .grp or .mgp file as a PermGroup, honoring certify claims."""
    text = _read(path)
    source = os.path.basename(path)
    try:
        if path.endswith(".mgp"):
            field, mats = parse_mgp(text, source=source)
            group = _mgp_to_perm_group(field, mats, seeds, source)
        else:
            group = permcore.parse_grp(text, source=source)
    except ValueError as e:
        raise InputFileError(str(e))
    _certify(group, _parse_certify_claims(text, source), source)
    return group


def _parse_seeds(spec, source="--seeds"):
    """Vectors as comma-separated codes, semicolon-separated: ``1,0;0,1``."""
    out = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            out.append(tuple(int(x) for x in part.split(",")))
        except ValueError:
            raise InputFileError("%s: non-integer coordinate in %r"
                                 % (source, part))
    if not out:
        raise InputFileError("%s: empty seed list" % source)
    return out


def resolve_threads(explicit):
    if explicit is not None:
        return max(1, explicit)
    env = os.environ.get("GROUPFACT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputFileError("GROUPFACT_THREADS=%r is not an integer" % env)
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# report plumbing

class Report:
    def __init__(self, out):
        self.out = out
        self.failures = 0

    def comment(self, text):
        print("# " + text, file=self.out)

    def line(self, *cells):
        print("\t".join(str(c) for c in cells), file=self.out)

    def config(self, verb, **opts):
        items = " ".join("%s=%s" % (k, opts[k]) for k in sorted(opts))
        self.comment("config: verb=%s%s" % (verb, " " + items if items else ""))

    def fail(self, *cells):
        self.failures += 1
        self.line(*cells)


def _timestamp_header(rep, enabled):
    if enabled:
        rep.comment("run: " + datetime.now(timezone.utc).isoformat())


# ---------------------------------------------------------------------------
# verbs

def cmd_verify_construction(rep, args):
    if args.family:
        if not (args.m is not None and args.q is not None):
            raise UsageError("verify-construction needs either no arguments "
                             "or all of FAMILY M Q")
        triples = [(args.family, args.m, args.q)]
    else:
        triples = list(constructions.BATTERY)
    rep.config("verify-construction",
               cases=";".join("%s,%d,%d" % t for t in triples))
    rep.comment("columns: family m q ambient ambient_order h_order "
                "index meet_order verified")
    for family, m, q in triples:
        r = constructions.verify_construction(family, m, q)
        f = r.summary_fields()
        cells = (f["family"], f["m"], f["q"], f["ambient"],
                 f["ambient_order"], f["h_order"], f["index"],
                 f["meet_order"], "PASS" if f["verified"] else "FAIL")
        if f["verified"]:
            rep.line(*cells)
        else:
            rep.fail(*cells)
    rep.line("SUMMARY", "verify-construction",
             "%d/%d PASS" % (len(triples) - rep.failures, len(triples)))


def cmd_search_factorizations(rep, args):
    threads = resolve_threads(args.threads)
    group = load_group(args.file, seeds=args.seed_vectors)
    gid = os.path.splitext(os.path.basename(args.file))[0]
    rep.config("search-factorizations", file=args.file,
               both_solvable=args.both_solvable, group_id=gid,
               group_order=group.order(), threads=threads)
    rep.comment("columns: g_order h_order k_order meet_order "
                "h_solvable k_solvable h_core_free k_core_free")
    if args.both_solvable:
        recs = factorlab.two_solvable_search(group, group_id=gid,
                                             threads=threads)
        shown = factorlab.table_view(recs)
        omitted = len(recs) - len(shown)
        if omitted:
            rep.comment("omitted %d record%s in the generic dihedral family"
                        % (omitted, "" if omitted == 1 else "s"))
    else:
        shown = factorlab.search_solvable_factorizations(group, group_id=gid,
                                                         threads=threads)
    for rec in sorted(shown, key=lambda r: r.signature()):
        rep.line(rec.line())
    rep.line("SUMMARY", "search-factorizations", "%d RECORDS" % len(shown))


def cmd_check_table(rep, args):
    table_id = args.table
    if table_id not in factorlab.TABLE_IDS:
        raise UsageError("unknown table %r (have: %s)"
                         % (table_id, ", ".join(factorlab.TABLE_IDS)))
    dataset_ids = sorted({r.group_id
                          for r in factorlab.expected_rows(table_id)})
    known = set(factorlab.known_group_ids())
    if args.groups:
        for gid in args.groups:
            if gid not in dataset_ids:
                raise UsageError("table %s has no rows for group %r"
                                 % (table_id, gid))
        gids = args.groups
    else:
        gids = [g for g in dataset_ids if g in known]
    threads = resolve_threads(args.threads)
    rep.config("check-table", table=table_id, groups=",".join(gids),
               seed=args.seed, threads=threads)
    rep.comment("columns: g_order h_order k_order meet_order "
                "h_solvable k_solvable h_core_free k_core_free")
    all_ok = True
    for gid in gids:
        if gid not in known:
            rep.line("SKIPPED", gid, "no bundled constructor for this group")
            continue
        records, inconclusive = factorlab.records_for_table(
            table_id, gid, threads=threads, seed=args.seed)
        diff = factorlab.check_table(table_id, records)
        for rec in sorted(records, key=lambda r: r.signature()):
            rep.line(rec.line())
        for row in diff.missing:
            rep.fail("MISSING", row.row_id, gid)
        for row in inconclusive:
            rep.line("INCONCLUSIVE", row.row_id, gid,
                     "no witness found; proves nothing")
        for rec in sorted(diff.findings, key=lambda r: r.signature()):
            rep.line("FINDING", rec.line())
        rep.line("SUMMARY", "%s %s" % (table_id, gid), diff.summary())
        all_ok = all_ok and diff.ok()
    return all_ok


def cmd_zsigmondy(rep, args):
    a, m = args.a, args.m
    rep.config("zsigmondy", a=a, m=m)
    if numth.zsigmondy_exceptional(a, m):
        rep.line("EXCEPTION; no primitive prime divisor")
        return
    r = numth.find_ppd(a, m)
    ok = numth.is_ppd_by_order(r, a, m) and numth.is_ppd_by_divisibility(r, a, m)
    if not ok:
        raise RuntimeError("claimed primitive prime divisor %d fails "
                           "its own certificate" % r)
    rep.line("PPD", a, m, r)


def cmd_common_divisor(rep, args):
    if args.sweep:
        ids = numth.classical_ids(args.n, args.q)
        rep.config("common-divisor", sweep=True, max_dim=args.n,
                   max_q=args.q, cases=len(ids))
    else:
        if args.family not in numth.FAMILIES:
            raise UsageError("unknown family %r (have: %s)"
                             % (args.family, ", ".join(numth.FAMILIES)))
        if not numth.valid_classical(args.family, args.n, args.q):
            raise UsageError("(%s, %d, %d) is not a valid classical id"
                             % (args.family, args.n, args.q))
        ids = [(args.family, args.n, args.q)]
        rep.config("common-divisor", family=args.family, n=args.n, q=args.q)
    rep.comment("columns: family n q r simple_r_part out_r_part equality")
    bad = 0
    for family, n, q in ids:
        holds = numth.common_divisor_holds(family, n, q)
        for r, tr, orr, eq in numth.common_divisor_report(family, n, q):
            rep.line(family, n, q, r, tr, orr, "EQ" if eq else "LT")
        if not holds:
            bad += 1
            rep.fail("VIOLATION", family, n, q)
    rep.line("SUMMARY", "common-divisor", "%d/%d PASS" % (len(ids) - bad,
                                                          len(ids)))


def _graph_from_arg(name):
    if name.endswith(".edg"):
        text = _read(name)
        try:
            return arcgraph.parse_edg(text, source=os.path.basename(name))
        except ValueError as e:
            raise InputFileError(str(e))
    try:
        return arcgraph.named_graph(name)
    except KeyError as e:
        raise UsageError(str(e.args[0]))


def _graph_record(rep, label, graph, cap):
    aut = arcgraph.graph_automorphisms(graph)
    arc = arcgraph.s_arc_transitivity(graph, aut, cap=cap)
    val = arc.valency if arc.valency is not None else "irregular"
    girth = arc.girth if arc.girth is not None else "acyclic"
    rep.line(label, graph.n, graph.edge_count(), val, girth,
             int(arc.connected), aut.order(), arc.s_max,
             int(graph.is_bipartite()))
    return aut, arc


def cmd_check_graph(rep, args):
    graph = _graph_from_arg(args.graph)
    if graph.n > arcgraph.MAX_AUT_VERTICES:
        raise UsageError("graph has %d vertices; automorphism analysis is "
                         "bounded at %d" % (graph.n, arcgraph.MAX_AUT_VERTICES))
    rep.config("check-graph", graph=args.graph, cap=args.cap)
    rep.comment("columns: graph n edges valency girth connected "
                "aut_order s_max bipartite")
    _graph_record(rep, args.graph, graph, args.cap)


def cmd_coset_graph(rep, args):
    group = load_group(args.file, seeds=args.seed_vectors)
    gid = os.path.splitext(os.path.basename(args.file))[0]
    rep.config("coset-graph", file=args.file, k_order=args.k_order,
               seed=args.seed, cap=args.cap, group_order=group.order())
    k = permcore.find_subgroup_by_order(group, args.k_order, seed=args.seed)
    if k is None:
        rep.line("NO SUBGROUP", "order %d not found (not a nonexistence "
                 "proof; try another --seed)" % args.k_order)
        return False
    if not group.core(k).is_trivial():
        rep.line("NOT CORE-FREE", "subgroup of order %d has nontrivial core"
                 % args.k_order)
        return False
    cands = arcgraph.two_arc_candidates(group, k)
    rep.comment("columns: m_order graph n edges valency girth connected "
                "aut_order s_max bipartite")
    if not cands:
        rep.line("NO CANDIDATES", gid, args.k_order)
        return True
    for m, w in cands:
        graph = arcgraph.coset_graph(arcgraph.CosetGraphSpec(group, k, w))
        image, _ = group.coset_action(k)
        arc = arcgraph.s_arc_transitivity(graph, image, cap=args.cap)
        if arc.s_max < 2:
            raise RuntimeError("candidate with m of order %d is not "
                               "2-arc-transitive (s_max=%d)"
                               % (m.order(), arc.s_max))
        val = arc.valency if arc.valency is not None else "irregular"
        aut_order = (arcgraph.graph_automorphisms(graph).order()
                     if graph.n <= arcgraph.MAX_AUT_VERTICES else "-")
        rep.line(m.order(), gid, graph.n, graph.edge_count(), val, arc.girth,
                 int(arc.connected), aut_order, arc.s_max,
                 int(graph.is_bipartite()))
    return True


def cmd_report_all(rep, args):
    threads = resolve_threads(args.threads)
    rep.config("report-all", seed=args.seed, threads=threads)
    ok = True

    rep.comment("section: verify-construction")
    sub = _Namespace(family=None, m=None, q=None)
    before = rep.failures
    cmd_verify_construction(rep, sub)
    ok = ok and rep.failures == before

    rep.comment("section: zsigmondy")
    for a, m in ((2, 4), (2, 6), (2, 10), (3, 6), (2, 12), (5, 4)):
        cmd_zsigmondy(rep, _Namespace(a=a, m=m))

    rep.comment("section: common-divisor")
    before = rep.failures
    cmd_common_divisor(rep, _Namespace(sweep=True, n=4, q=9,
                                       family=None))
    ok = ok and rep.failures == before

    rep.comment("section: search-factorizations")
    for name in ("psl2_7.grp", "psl2_11.grp"):
        cmd_search_factorizations(rep, _Namespace(
            file=os.path.join(DATA_DIR, name), both_solvable=True,
            threads=args.threads, seed_vectors=None))

    rep.comment("section: check-table")
    for table_id, gid in (("tab4", "PSL2(7)"), ("tab4", "PSL2(11)"),
                          ("tab4", "PSL2(23)"), ("tab4", "PSL3(3)"),
                          ("tab4", "M11"), ("tab1", "PSL2(11)"),
                          ("tab8", "M11")):
        got = cmd_check_table(rep, _Namespace(
            table=table_id, groups=[gid], seed=args.seed,
            threads=args.threads))
        ok = ok and got

    rep.comment("section: check-graph")
    rep.comment("columns: graph n edges valency girth connected "
                "aut_order s_max bipartite")
    for name in ("petersen", "hoffman-singleton", "higman-sims"):
        _graph_record(rep, name, arcgraph.named_graph(name), cap=4)

    rep.line("SUMMARY", "report-all", "PASS" if ok and rep.failures == 0
             else "FAIL")
    return ok and rep.failures == 0


class _Namespace(argparse.Namespace):
    pass


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="groupfact",
                description="factorizations of finite groups with a solvable "
                            "factor, and s-arc-transitive coset graphs")
    sub = p.add_subparsers(dest="verb", metavar="VERB")

    vc = sub.add_parser("verify-construction",
                        help="certify the bundled geometric factorizations")
    vc.add_argument("family", nargs="?", choices=constructions.FAMILIES)
    vc.add_argument("m", nargs="?", type=int)
    vc.add_argument("q", nargs="?", type=int)

    sf = sub.add_parser("search-factorizations",
                        help="scan a group file for factorizations with a "
                             "solvable factor")
    sf.add_argument("file")
    sf.add_argument("--both-solvable", action="store_true",
                    help="require both factors solvable; the generic "
                         "dihedral family is filtered from the output")
    sf.add_argument("--threads", type=int, default=None)
    sf.add_argument("--seeds", dest="seed_spec", default=None,
                    help=".mgp only: seed vectors like '1,0,0;0,1,0'")

    ct = sub.add_parser("check-table",
                        help="recompute a bundled expected table and diff")
    ct.add_argument("table", metavar="TABLE",
                    help="one of %s" % ", ".join(factorlab.TABLE_IDS))
    ct.add_argument("groups", nargs="*", metavar="GROUP")
    ct.add_argument("--seed", type=int, default=0)
    ct.add_argument("--threads", type=int, default=None)

    zs = sub.add_parser("zsigmondy",
                        help="primitive prime divisor of a^m - 1, or the "
                             "exception verdict")
    zs.add_argument("a", type=int)
    zs.add_argument("m", type=int)

    cd = sub.add_parser("common-divisor",
                        help="r-part comparison of |T| and |Out(T)| for "
                             "classical simple groups")
    cd.add_argument("family", nargs="?")
    cd.add_argument("n", type=int)
    cd.add_argument("q", type=int)
    cd.add_argument("--sweep", action="store_true",
                    help="treat N Q as bounds and sweep all classical ids")

    cg = sub.add_parser("check-graph",
                        help="metrics, automorphisms, and s-arc-transitivity")
    cg.add_argument("graph", metavar="GRAPH",
                    help="petersen | hoffman-singleton | higman-sims | "
                         "file.edg")
    cg.add_argument("--cap", type=int, default=arcgraph.S_ARC_CAP)

    co = sub.add_parser("coset-graph",
                        help="2-arc-transitive coset graph candidates from "
                             "a vertex stabilizer")
    co.add_argument("file")
    co.add_argument("--k-order", type=int, required=True,
                    help="order of the vertex stabilizer to search for")
    co.add_argument("--seed", type=int, default=0)
    co.add_argument("--cap", type=int, default=arcgraph.S_ARC_CAP)
    co.add_argument("--seeds", dest="seed_spec", default=None)

    ra = sub.add_parser("report-all",
                        help="the full deterministic verification battery")
    ra.add_argument("--seed", type=int, default=0)
    ra.add_argument("--threads", type=int, default=None)

    for q in (vc, sf, ct, zs, cd, cg, co, ra):
        q.add_argument("--timestamp", action="store_true",
                       help="add a timestamped # header line")
    return p


def parse_and_dispatch(argv, out=None):
    if out is None:
        out = sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb is None:
        raise UsageError("a verb is required")
    if getattr(args, "seed_spec", None) is not None:
        args.seed_vectors = _parse_seeds(args.seed_spec)
    elif hasattr(args, "seed_spec"):
        args.seed_vectors = None

    rep = Report(out)
    _timestamp_header(rep, args.timestamp)
    ok = True
    if args.verb == "verify-construction":
        cmd_verify_construction(rep, args)
    elif args.verb == "search-factorizations":
        cmd_search_factorizations(rep, args)
    elif args.verb == "check-table":
        ok = cmd_check_table(rep, args)
    elif args.verb == "zsigmondy":
        cmd_zsigmondy(rep, args)
    elif args.verb == "common-divisor":
        cmd_common_divisor(rep, args)
    elif args.verb == "check-graph":
        cmd_check_graph(rep, args)
    elif args.verb == "coset-graph":
        ok = cmd_coset_graph(rep, args)
    elif args.verb == "report-all":
        ok = cmd_report_all(rep, args)
    else:
        raise UsageError("unknown verb %r" % args.verb)
    return 0 if ok and rep.failures == 0 else 1


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        return parse_and_dispatch(argv)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        print("run 'groupfact --help' for the verb list", file=sys.stderr)
        return 2
    except InputFileError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 3
    except ValueError as e:
        # domain preconditions (size limits and the like) raise ValueError
        print("usage error: %s" % e, file=sys.stderr)
        return 2
    except (RuntimeError, AssertionError) as e:
        print("internal error: %s" % e, file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
