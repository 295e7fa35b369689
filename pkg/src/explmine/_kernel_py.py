"""Pure-Python span-scan kernel; mirror of the compiled _kernel module.

scan_anchors must stay exactly equivalent to the Cython version: integer
logic only, no floats, no dict iteration, so both backends are
bit-deterministic and interchangeable.
"""

from __future__ import annotations

COMPILED = False

# reason codes shared with the compiled kernel
OK = 0
NO_NEXT_SRC = 1
NEXT_UNALIGNED = 2
NO_TARGET_AFTER_ANCHOR = 3
SPAN_TOO_SHORT = 4
SPAN_ALIGNED = 5
NO_PUNCT = 6
NO_OTHER_CONTENT = 7


def scan_anchors(n_src, align_src, align_tgt, tgt_punct, tgt_stem_ids, anchor_k, anchor_m, min_span):
    """Checks the redundant-span conditions for each (k, m) anchor.

    Returns one (reason, span_len) per anchor; reason OK means a span of
    span_len was found starting at m+1. Alignment links are parallel arrays;
    token facts are per-target-position arrays.
    """
    n_links = len(align_src)
    out = []
    for a in range(len(anchor_k)):
        k = anchor_k[a]
        m = anchor_m[a]
        if k + 1 >= n_src:
            out.append((NO_NEXT_SRC, 0))
            continue
        has_any = False
        jstar = -1
        for l in range(n_links):
            if align_src[l] == k + 1:
                has_any = True
                j = align_tgt[l]
                if j > m and (jstar < 0 or j < jstar):
                    jstar = j
        if not has_any:
            out.append((NEXT_UNALIGNED, 0))
            continue
        if jstar < 0:
            out.append((NO_TARGET_AFTER_ANCHOR, 0))
            continue
        n = jstar - m - 1
        if n < min_span:
            out.append((SPAN_TOO_SHORT, 0))
            continue
        span_aligned = False
        for l in range(n_links):
            j = align_tgt[l]
            if m < j < jstar:
                span_aligned = True
                break
        if span_aligned:
            out.append((SPAN_ALIGNED, 0))
            continue
        has_punct = False
        has_other = False
        anchor_stem = tgt_stem_ids[m]
        for x in range(m + 1, jstar):
            if tgt_punct[x]:
                has_punct = True
            elif tgt_stem_ids[x] != anchor_stem:
                has_other = True
        if not has_punct:
            out.append((NO_PUNCT, 0))
        elif not has_other:
            out.append((NO_OTHER_CONTENT, 0))
        else:
            out.append((OK, n))
    return out
