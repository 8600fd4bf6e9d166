"""Independent brute-force reference implementations for the test suite.

Everything here recomputes from first principles with naive loops over
materialized structures, sharing no code with the package internals.
"""

from __future__ import annotations

import math


def oracle_metrics(docs: dict) -> dict:
    """All four metrics from a dense doc-term matrix with nested loops.

    ``docs`` maps doc_id -> flat token list.
    """
    doc_ids = list(docs)
    vocab = sorted({t for tokens in docs.values() for t in tokens})
    matrix = {d: {t: 0 for t in vocab} for d in doc_ids}
    for d, tokens in docs.items():
        for t in tokens:
            matrix[d][t] += 1
    row_totals = {d: sum(matrix[d].values()) for d in doc_ids}
    n_docs = len(doc_ids)
    total = sum(len(tokens) for tokens in docs.values())
    out = {}
    for t in vocab:
        n_t = 0
        df = 0
        for d in doc_ids:
            n_t += matrix[d][t]
            if matrix[d][t] > 0:
                df += 1
        tfidf_sum = 0.0
        for d in doc_ids:
            if matrix[d][t] > 0:
                tfidf_sum += (matrix[d][t] / row_totals[d]) * (n_docs / df)
        h = 0.0
        for d in doc_ids:
            if matrix[d][t] > 0:
                p = matrix[d][t] / n_t
                h -= p * math.log(p)
        out[t] = {
            "count": n_t,
            "df": df,
            "tf": n_t / total,
            "idf": math.log(n_docs / df),
            "tfidf": tfidf_sum / df,
            "entropy": h,
        }
    return out


def oracle_bigram_score(sentences: list, wi: str, wj: str, delta: float) -> float:
    """Eq-by-hand score: recount everything by scanning all sentences."""
    count_i = sum(1 for s in sentences for t in s if t == wi)
    count_j = sum(1 for s in sentences for t in s if t == wj)
    count_ij = 0
    for s in sentences:
        for a, b in zip(s, s[1:]):
            if a == wi and b == wj:
                count_ij += 1
    total = sum(len(s) for s in sentences)
    return (count_ij - delta) * total / (count_i * count_j)


def oracle_phrase_pass(sentences: list, threshold: float, delta: float) -> list:
    """Enumerate every adjacent pair, score it directly, greedy-join."""
    out = []
    for sentence in sentences:
        joined = []
        i = 0
        while i < len(sentence):
            if i + 1 < len(sentence):
                score = oracle_bigram_score(sentences, sentence[i], sentence[i + 1], delta)
                if score > threshold:
                    joined.append(sentence[i] + "_" + sentence[i + 1])
                    i += 2
                    continue
            joined.append(sentence[i])
            i += 1
        out.append(joined)
    return out


def oracle_detect_phrases(sentences: list, thresholds: tuple, delta: float) -> list:
    current = [list(s) for s in sentences]
    for threshold in thresholds:
        current = oracle_phrase_pass(current, threshold, delta)
    return current


def oracle_rank(rows, metric: str) -> list:
    """Naive decorate-sort: descending for tf/entropy, ascending otherwise."""
    decorated = [(getattr(r, metric), r.term) for r in rows]
    if metric in ("tf", "entropy"):
        decorated.sort(key=lambda vt: (-vt[0], vt[1]))
    else:
        decorated.sort(key=lambda vt: (vt[0], vt[1]))
    return [term for _, term in decorated]


def oracle_union(lists_of_terms: list) -> set:
    union = set()
    for terms in lists_of_terms:
        union |= set(terms)
    return union


def relative_error(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))
