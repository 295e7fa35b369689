# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled span-scan kernel; must stay exactly equivalent to _kernel_py."""

COMPILED = True

cdef enum:
    OK = 0
    NO_NEXT_SRC = 1
    NEXT_UNALIGNED = 2
    NO_TARGET_AFTER_ANCHOR = 3
    SPAN_TOO_SHORT = 4
    SPAN_ALIGNED = 5
    NO_PUNCT = 6
    NO_OTHER_CONTENT = 7


def scan_anchors(int n_src, int[:] align_src, int[:] align_tgt,
                 unsigned char[:] tgt_punct, int[:] tgt_stem_ids,
                 int[:] anchor_k, int[:] anchor_m, int min_span):
    """Checks the redundant-span conditions for each (k, m) anchor.

    Returns one (reason, span_len) per anchor; reason OK means a span of
    span_len was found starting at m+1.
    """
    cdef Py_ssize_t n_links = align_src.shape[0]
    cdef Py_ssize_t n_anchors = anchor_k.shape[0]
    cdef Py_ssize_t a, l
    cdef int k, m, j, jstar, n, x, anchor_stem
    cdef bint has_any, span_aligned, has_punct, has_other
    out = []
    for a in range(n_anchors):
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
