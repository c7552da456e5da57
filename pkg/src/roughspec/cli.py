"""Command-line pipeline driver.

Subcommands: generate, profile, filter, cluster, evaluate, explain, sweep.
Configs are JSON documents validated against the schemas published in this
module; command-line flags override file values. Exit codes: 0 on success,
2 for validation errors (bad input, bad config), 3 for numerical failures.

Randomness: every command takes one top-level seed. Per-stage seeds are
derived as SeedSequence([seed, crc32(stage_label)]), so sweep cells are
restartable in isolation and results never depend on execution order. The
environment variable ROUGHSPEC_THREADS caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import zlib
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import jsonschema

from . import evalx, explain as explain_mod, roughfilter, synthgen
from .corpus import build_term_space, cosine_similarity, read_corpus_jsonl, svd_reduce
from .kmeans import KMeansConfig
from .pipeline import GSC_METHODS, cluster_similarity, run_method_variant
from .simcore import (
    NumericalError,
    Partition,
    SimilarityMatrix,
    ValidationError,
    read_similarity_csv,
    write_embedding_csv,
    write_similarity_csv,
)
from .spectral import SpectralOptions

__all__ = ["main", "CLUSTER_CONFIG_SCHEMA", "SWEEP_CONFIG_SCHEMA"]


def derive_seed(seed: int, label: str) -> int:
    """Stable per-stage seed: SeedSequence([seed, crc32(label)])."""
    return int(np.random.SeedSequence([seed, zlib.crc32(label.encode())]).generate_state(1)[0])


def _thread_cap() -> int:
    raw = os.environ.get("ROUGHSPEC_THREADS", "")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValidationError(f"ROUGHSPEC_THREADS must be an integer, got {raw!r}")
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# Config schemas
# ---------------------------------------------------------------------------

_GENERATOR_PROPS = {
    "n": {"type": "integer", "minimum": 1},
    "m": {"type": "integer", "minimum": 1},
    "props": {"type": "array", "items": {"type": "number"}},
    "min_in": {"type": "array", "items": {"type": "number"}},
    "max_in": {"type": "array", "items": {"type": "number"}},
    "max_out": {"type": "array", "items": {"type": "number"}},
    "seed": {"type": "integer"},
}

_INPUT_SCHEMA = {
    "type": "object",
    "oneOf": [
        {"required": ["similarity"]},
        {"required": ["corpus"]},
        {"required": ["preset"]},
        {"required": ["generator"]},
    ],
    "properties": {
        "similarity": {"type": "string"},
        "corpus": {"type": "string"},
        "weighting": {"enum": ["tf", "tfidf"]},
        "preset": {"type": "integer", "minimum": 1, "maximum": 4},
        "n": {"type": "integer", "minimum": 1},
        "generator": {"type": "object", "properties": _GENERATOR_PROPS},
        "noise": {
            "type": "object",
            "properties": {
                "count": {"type": "integer", "minimum": 1},
                "high": {"type": "number"},
                "low": {"type": "number"},
            },
            "required": ["count"],
        },
    },
}

_KMEANS_SCHEMA = {
    "type": "object",
    "properties": {
        "restarts": {"type": "integer", "minimum": 1},
        "max_iter": {"type": "integer", "minimum": 1},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer"},
    },
}

CLUSTER_CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["input", "method"],
    "properties": {
        "seed": {"type": "integer"},
        "input": _INPUT_SCHEMA,
        "method": {
            "type": "object",
            "required": ["k"],
            "properties": {
                "name": {"enum": list(GSC_METHODS)},
                "id": {"type": "integer", "minimum": 0, "maximum": 8},
                "k": {"type": "integer", "minimum": 2},
                "extra_dimension": {"type": "boolean"},
                "unit_rows": {"type": "boolean"},
                "svd_rank": {"type": ["integer", "null"], "minimum": 1},
                "skip_trivial": {"type": "boolean"},
            },
        },
        "filter": {
            "type": "object",
            "properties": {
                "q": {"type": "number", "exclusiveMinimum": 0, "maximum": 0.5},
                "thresholds": {"type": "array", "items": {"type": "number", "minimum": 0}},
            },
        },
        "kmeans": _KMEANS_SCHEMA,
        "out": {"type": "string"},
    },
}

SWEEP_CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["datasets", "methods", "thresholds"],
    "properties": {
        "seed": {"type": "integer"},
        "datasets": {
            "type": "array",
            "minItems": 1,
            "items": {
                "allOf": [
                    _INPUT_SCHEMA,
                    {"properties": {"name": {"type": "string"}, "labels": {"type": "string"}}},
                ]
            },
        },
        "methods": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "integer", "minimum": 0, "maximum": 8},
        },
        "thresholds": {"type": "array", "minItems": 1, "items": {"type": "number", "minimum": 0}},
        "q": {"type": "number", "exclusiveMinimum": 0, "maximum": 0.5},
        "k": {"type": "integer", "minimum": 2},
        "kmeans": _KMEANS_SCHEMA,
    },
}


def _validate(config: dict, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(config, schema)
    except jsonschema.ValidationError as exc:
        raise ValidationError(f"invalid {what} config: {exc.message}") from exc
    thresholds = (config.get("filter") or {}).get("thresholds") or config.get("thresholds")
    if thresholds and sorted(thresholds) != list(thresholds):
        raise ValidationError("thresholds must be sorted ascending")


# ---------------------------------------------------------------------------
# Input loading
# ---------------------------------------------------------------------------


def _load_input(spec: dict, seed: int) -> tuple[SimilarityMatrix, list | None]:
    """Build (similarity matrix, true labels or None) from an input spec."""
    if "similarity" in spec:
        s = read_similarity_csv(spec["similarity"])
        labels = None
        if "labels" in spec:
            arr, _ = synthgen.read_labels_json(spec["labels"])
            labels = [str(v) for v in arr.tolist()]
        return s, labels
    if "corpus" in spec:
        corp = read_corpus_jsonl(spec["corpus"])
        space = build_term_space(corp, spec.get("weighting", "tf"))
        s = cosine_similarity(space)
        labels = list(space.labels) if space.labels is not None else None
        return s, labels
    if "preset" in spec:
        params = synthgen.dataset_presets(
            spec["preset"], n=spec.get("n", 1500), seed=spec.get("seed", derive_seed(seed, "generate"))
        )
    else:
        g = dict(spec["generator"])
        g.setdefault("seed", derive_seed(seed, "generate"))
        params = synthgen.GeneratorParams(**g)
    s, truth = synthgen.generate(params)
    labels = [str(v) for v in truth.labels.tolist()]
    noise = spec.get("noise")
    if noise:
        s, noise_idx = synthgen.add_noise_documents(
            s,
            noise["count"],
            high=noise.get("high", 0.08),
            low=noise.get("low", 0.0),
            seed=derive_seed(params.seed, "noise"),
        )
        labels += ["noise"] * len(noise_idx)
    return s, labels


def _load_true_labels(path) -> list[str]:
    if str(path).endswith(".jsonl"):
        corp = read_corpus_jsonl(path)
        if corp.labels is None:
            raise ValidationError(f"{path}: corpus has no labels")
        return [str(v) for v in corp.labels]
    arr, _ = synthgen.read_labels_json(path)
    return [str(v) for v in arr.tolist()]


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_generate(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    if args.params:
        with open(args.params, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        jsonschema.validate(raw, {"type": "object", "properties": _GENERATOR_PROPS})
        raw.setdefault("seed", args.seed)
        params = synthgen.GeneratorParams(**raw)
    else:
        if args.preset is None:
            raise ValidationError("either --preset or --params is required")
        params = synthgen.dataset_presets(args.preset, n=args.n, seed=args.seed)
    s, truth = synthgen.generate(params)
    labels = truth.labels.tolist()
    if args.noise:
        s, noise_idx = synthgen.add_noise_documents(
            s, args.noise, high=args.noise_high, seed=derive_seed(params.seed, "noise")
        )
        labels += [-1] * len(noise_idx)
    write_similarity_csv(s, os.path.join(args.out, "similarity.csv"))
    payload = {
        "labels": labels,
        "params": dataclasses.asdict(params),
        "seed": params.seed,
        "rng": synthgen.RNG_NAME,
    }
    if args.noise:
        payload["noise"] = {"count": args.noise, "high": args.noise_high}
    with open(os.path.join(args.out, "labels.json"), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
    print(f"wrote {args.out}/similarity.csv ({s.n} items) and labels.json")
    return 0


def _cmd_profile(args) -> int:
    s = read_similarity_csv(args.similarity)
    profile = roughfilter.similarity_profile(s, args.q)
    roughfilter.write_profile_csv(profile, args.out, item_ids=s.item_ids)
    print(f"wrote {args.out}")
    print(f"suggested threshold: {roughfilter.suggest_threshold(profile):.6g}")
    return 0


def _cmd_filter(args) -> int:
    s = read_similarity_csv(args.similarity)
    profile = roughfilter.similarity_profile(s, args.q)
    core, removed = roughfilter.filter_boundary(s, profile, args.threshold)
    os.makedirs(args.out, exist_ok=True)
    write_similarity_csv(core, os.path.join(args.out, "core.csv"))
    kept = np.setdiff1d(np.arange(s.n), removed)
    with open(os.path.join(args.out, "removed.json"), "w", encoding="utf-8") as fh:
        json.dump(
            {
                "threshold": args.threshold,
                "q": args.q,
                "removed": removed.tolist(),
                "kept": kept.tolist(),
            },
            fh,
            indent=1,
        )
    print(f"removed {removed.size} of {s.n} documents; core written to {args.out}/core.csv")
    return 0


def _spectral_options(method_cfg: dict) -> SpectralOptions:
    return SpectralOptions(
        k=method_cfg["k"],
        extra_dimension=method_cfg.get("extra_dimension", False),
        unit_rows=method_cfg.get("unit_rows", False),
        svd_rank=method_cfg.get("svd_rank"),
        skip_trivial=method_cfg.get("skip_trivial", False),
    )


def _cluster_once(s: SimilarityMatrix, config: dict, threshold: float, seed: int):
    """One filter + cluster pass; shared by `cluster` and each sweep cell."""
    fcfg = config.get("filter", {})
    q = fcfg.get("q", roughfilter.DEFAULT_FRACTION)
    profile = roughfilter.similarity_profile(s, q)
    core, removed = roughfilter.filter_boundary(s, profile, threshold)
    kept = np.setdiff1d(np.arange(s.n), removed)

    mcfg = config["method"]
    kcfg = config.get("kmeans", {})
    cfg = KMeansConfig(
        k=mcfg["k"],
        restarts=kcfg.get("restarts", 10),
        max_iter=kcfg.get("max_iter", 100),
        tol=kcfg.get("tol", 1e-9),
        seed=kcfg.get("seed", seed),
    )
    if "id" in mcfg:
        result = run_method_variant(core, mcfg["id"], cfg)
        emb = None
    else:
        if "name" not in mcfg:
            raise ValidationError("method config needs either 'name' or 'id'")
        if mcfg["name"] in ("K", "M", "B") and mcfg.get("svd_rank"):
            raise ValidationError("svd_rank applies to spectral methods only")
        result, emb = cluster_similarity(core, mcfg["name"], _spectral_options(mcfg), cfg)
    return result, emb, core, kept, removed


def _cmd_cluster(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        config = json.load(fh)
    # flag overrides
    if args.method:
        config.setdefault("method", {})["name"] = args.method
    if args.method_id is not None:
        config.setdefault("method", {})["id"] = args.method_id
    if args.k:
        config.setdefault("method", {})["k"] = args.k
    if args.seed is not None:
        config["seed"] = args.seed
    if args.threshold is not None:
        config.setdefault("filter", {})["thresholds"] = [args.threshold]
    if args.out:
        config["out"] = args.out
    _validate(config, CLUSTER_CONFIG_SCHEMA, "cluster")

    seed = config.get("seed", 0)
    out = config.get("out", ".")
    os.makedirs(out, exist_ok=True)
    s, _ = _load_input(config["input"], seed)
    thresholds = config.get("filter", {}).get("thresholds", [0.0])
    for t in thresholds:
        result, emb, core, kept, removed = _cluster_once(
            s, config, t, derive_seed(seed, f"kmeans:t={t:g}")
        )
        ids = core.item_ids or tuple(str(i) for i in kept)
        payload = {
            "labels": result.partition.labels.tolist(),
            "centroids": result.centroids.tolist(),
            "objective": result.objective,
            "iterations_run": result.iterations_run,
            "restart_chosen": result.restart_chosen,
            "threshold": t,
            "kept": kept.tolist(),
            "removed": removed.tolist(),
            "doc_ids": list(ids),
            "config": config,
        }
        path = os.path.join(out, f"result_t{t:g}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
        if args.dump_embedding and emb is not None:
            write_embedding_csv(emb, os.path.join(out, f"embedding_t{t:g}.csv"))
        print(f"threshold {t:g}: {removed.size} removed, objective {result.objective:.6g} -> {path}")
    return 0


def _cmd_evaluate(args) -> int:
    true_labels = _load_true_labels(args.true)
    with open(args.pred, "r", encoding="utf-8") as fh:
        pred = json.load(fh)
    labels = np.asarray(pred["labels"], dtype=int)
    kept = np.asarray(pred.get("kept", np.arange(len(true_labels))), dtype=int)
    if kept.size != labels.size:
        raise ValidationError(f"prediction has {labels.size} labels but {kept.size} kept indices")
    truth = [true_labels[i] for i in kept]
    k = int(pred.get("config", {}).get("method", {}).get("k", labels.max() + 1))
    partition = Partition(labels, max(k, int(labels.max()) + 1))

    s = read_similarity_csv(args.similarity).submatrix(kept)
    cm = evalx.confusion(np.asarray(truth), partition)
    score = evalx.match_and_score(cm)
    payload = {
        "rcut": evalx.rcut(s, partition),
        "ncut": evalx.ncut(s, partition),
        "nrcut": evalx.nrcut(s, partition),
        "confusion": {
            "counts": cm.counts.tolist(),
            "row_names": list(cm.row_names),
            "col_names": list(cm.col_names),
        },
        "mapping": [list(pair) for pair in score.mapping],
        "relative_error": score.relative_error,
        "f1": score.f1,
    }
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
    print(
        f"relative_error {score.relative_error:.4f}  f1 {score.f1:.4f}  "
        f"rcut {payload['rcut']:.6g}  ncut {payload['ncut']:.6g}  nrcut {payload['nrcut']:.6g}"
    )
    return 0


def _cmd_explain(args) -> int:
    corp = read_corpus_jsonl(args.corpus)
    with open(args.pred, "r", encoding="utf-8") as fh:
        pred = json.load(fh)
    wanted = list(pred["doc_ids"])
    by_id = {doc_id: (doc_id, text) for doc_id, text in corp.docs}
    missing = [d for d in wanted if d not in by_id]
    if missing:
        raise ValidationError(f"corpus is missing clustered doc id {missing[0]!r}")
    labels_by_id = None
    if corp.labels is not None:
        labels_by_id = {doc_id: lab for (doc_id, _), lab in zip(corp.docs, corp.labels)}
    sub = type(corp)(
        tuple(by_id[d] for d in wanted),
        tuple(labels_by_id[d] for d in wanted) if labels_by_id else None,
    )
    space = build_term_space(sub)
    if space.dropped_docs:
        raise ValidationError(
            f"document {space.dropped_docs[0]!r} lost all terms under the explanation vocabulary"
        )
    partition = Partition(np.asarray(pred["labels"], dtype=int), int(max(pred["labels"])) + 1)
    explanations = explain_mod.explain_clusters(space, partition, args.top_words)

    as_json = [
        {
            "cluster": e.cluster,
            "top_terms": [[t, v] for t, v in e.top_terms],
            "member_ids": [space.doc_ids[i] for i in e.member_indices],
            "member_similarities": e.member_similarities.tolist(),
            "empty": e.empty,
        }
        for e in explanations
    ]
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(as_json, fh, indent=1)
    lines = ["# Cluster explanations", ""]
    for e in explanations:
        lines.append(f"## Cluster {e.cluster} ({e.member_indices.size} documents)")
        if e.empty:
            lines.append("*empty cluster*")
        else:
            lines.append("Top terms: " + ", ".join(f"{t} ({v:.4f})" for t, v in e.top_terms))
            lines.append(f"Mean member similarity to centroid: {e.member_similarities.mean():.4f}")
        lines.append("")
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines))
    print(f"wrote {args.out}" + (f" and {args.json}" if args.json else ""))
    return 0


def _sweep_cell(s, truth, method_id, threshold, q, k, kcfg, seed, cell_label):
    config = {
        "method": {"id": method_id, "k": k},
        "filter": {"q": q},
        "kmeans": dict(kcfg),
    }
    result, _, core, kept, removed = _cluster_once(
        s, config, threshold, derive_seed(seed, cell_label)
    )
    cm = evalx.confusion(np.asarray([truth[i] for i in kept]), result.partition)
    score = evalx.match_and_score(cm)
    return {
        "relative_error": score.relative_error,
        "f1": score.f1,
        "removed": int(removed.size),
        "kept": int(kept.size),
    }


def _cmd_sweep(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        config = json.load(fh)
    if args.seed is not None:
        config["seed"] = args.seed
    _validate(config, SWEEP_CONFIG_SCHEMA, "sweep")
    seed = config.get("seed", 0)
    out = args.out
    os.makedirs(out, exist_ok=True)

    datasets = []
    for i, spec in enumerate(config["datasets"]):
        name = spec.get("name", f"dataset_{i}")
        s, truth = _load_input(spec, derive_seed(seed, f"dataset:{name}"))
        if truth is None:
            raise ValidationError(f"dataset {name!r} has no ground-truth labels; sweep needs them")
        k = config.get("k") or len(set(truth) - {"noise"})
        datasets.append((name, s, truth, k))

    methods = config["methods"]
    thresholds = config["thresholds"]
    q = config.get("q", roughfilter.DEFAULT_FRACTION)
    kcfg = config.get("kmeans", {})

    cells = [
        (name, s, truth, k, m, t)
        for name, s, truth, k in datasets
        for m in methods
        for t in thresholds
    ]

    def run(cell):
        name, s, truth, k, m, t = cell
        label = f"cell:{name}:m={m}:t={t:g}"
        try:
            return (name, m, t), _sweep_cell(s, truth, m, t, q, k, kcfg, seed, label)
        except ValidationError as exc:
            # e.g. the threshold removed everything; report the hole, keep sweeping
            return (name, m, t), {"error": str(exc)}

    with ThreadPoolExecutor(max_workers=_thread_cap()) as pool:
        results = dict(pool.map(run, cells))

    names = [d[0] for d in datasets]
    for metric in ("relative_error", "f1"):
        for t in thresholds:
            path = os.path.join(out, f"{metric}_t{t:g}.csv")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("dataset," + ",".join(str(m) for m in methods) + "\n")
                for name in names:
                    row = [name]
                    for m in methods:
                        cell = results[(name, m, t)]
                        row.append("" if "error" in cell else f"{cell[metric]:.6g}")
                    fh.write(",".join(row) + "\n")

    base_t = thresholds[0]
    summary: dict = {"baseline_threshold": base_t, "thresholds": {}}
    lines = ["threshold,cells,improved,improved_pct" + "".join(f",method_{m}_pct" for m in methods)]
    for t in thresholds[1:]:
        improved = total = 0
        per_method = {}
        for m in methods:
            m_improved = m_total = 0
            for name in names:
                before = results[(name, m, base_t)]
                cell = results[(name, m, t)]
                if "error" in before or "error" in cell:
                    continue
                m_total += 1
                if cell["relative_error"] < before["relative_error"]:
                    m_improved += 1
            per_method[m] = m_improved / m_total if m_total else float("nan")
            improved += m_improved
            total += m_total
        pct = improved / total if total else float("nan")
        summary["thresholds"][f"{t:g}"] = {
            "cells": total,
            "improved": improved,
            "improved_pct": pct,
            "per_method_pct": {str(m): per_method[m] for m in methods},
        }
        lines.append(
            f"{t:g},{total},{improved},{pct:.4f}"
            + "".join(f",{per_method[m]:.4f}" for m in methods)
        )
        print(f"threshold {t:g}: error reduced in {improved} of {total} cells ({pct:.0%})")
    with open(os.path.join(out, "improvement_summary.csv"), "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    with open(os.path.join(out, "summary.json"), "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=1)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roughspec",
        description="Spectral clustering with boundary-document filtering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="synthesize a block similarity matrix")
    g.add_argument("--preset", type=int, choices=(1, 2, 3, 4))
    g.add_argument("--params", help="JSON file with generator parameters")
    g.add_argument("--n", type=int, default=1500)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--noise", type=int, default=0, help="append this many noise documents")
    g.add_argument("--noise-high", type=float, default=0.08)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_generate)

    p = sub.add_parser("profile", help="per-document top/bottom similarity profile")
    p.add_argument("--similarity", required=True)
    p.add_argument("--q", type=float, default=roughfilter.DEFAULT_FRACTION)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_profile)

    f = sub.add_parser("filter", help="remove boundary documents below a threshold")
    f.add_argument("--similarity", required=True)
    f.add_argument("--q", type=float, default=roughfilter.DEFAULT_FRACTION)
    f.add_argument("--threshold", type=float, required=True)
    f.add_argument("--out", required=True)
    f.set_defaults(func=_cmd_filter)

    c = sub.add_parser("cluster", help="embed, optionally filter, and run k-means")
    c.add_argument("--config", required=True)
    c.add_argument("--method", choices=GSC_METHODS)
    c.add_argument("--method-id", type=int, choices=range(9))
    c.add_argument("--k", type=int)
    c.add_argument("--seed", type=int)
    c.add_argument("--threshold", type=float)
    c.add_argument("--out")
    c.add_argument("--dump-embedding", action="store_true")
    c.set_defaults(func=_cmd_cluster)

    e = sub.add_parser("evaluate", help="score a clustering against true labels")
    e.add_argument("--true", required=True, help="labels.json or a labeled corpus .jsonl")
    e.add_argument("--pred", required=True, help="result JSON from the cluster command")
    e.add_argument("--similarity", required=True)
    e.add_argument("--out", required=True)
    e.set_defaults(func=_cmd_evaluate)

    x = sub.add_parser("explain", help="keyword explanations of clusters")
    x.add_argument("--corpus", required=True)
    x.add_argument("--pred", required=True)
    x.add_argument("--top-words", type=int, default=explain_mod.DEFAULT_TOP_WORDS)
    x.add_argument("--out", required=True, help="markdown report path")
    x.add_argument("--json", help="optional JSON report path")
    x.set_defaults(func=_cmd_explain)

    w = sub.add_parser("sweep", help="methods x thresholds x datasets grid")
    w.add_argument("--config", required=True)
    w.add_argument("--seed", type=int)
    w.add_argument("--out", required=True)
    w.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
