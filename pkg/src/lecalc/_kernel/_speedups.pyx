# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled normal-form kernel.

Same contract as the pure module: term lists are (exponent_tuple, Fraction)
pairs sorted strictly descending. Monomials are encoded as big-endian byte
strings whose lexicographic comparison equals the monomial-order comparison,
so the max-term scan runs on C memcmp; divisibility runs on C integer
arrays. Coefficients stay exact Fractions.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc

from fractions import Fraction

KIND_LEX = 0
KIND_DEGREVLEX = 1
KIND_BLOCK = 2

BACKEND = "compiled"

cdef long MAXVAL = 0x7FFFFFFF


cdef inline void _pack_u32(unsigned char *buf, unsigned long v) noexcept:
    buf[0] = (v >> 24) & 0xFF
    buf[1] = (v >> 16) & 0xFF
    buf[2] = (v >> 8) & 0xFF
    buf[3] = v & 0xFF


cdef inline void _pack_u64(unsigned char *buf, unsigned long long v) noexcept:
    cdef int i
    for i in range(8):
        buf[i] = (v >> (8 * (7 - i))) & 0xFF


cdef class _Encoder:
    """Builds order-respecting byte keys for exponent tuples."""

    cdef int kind, n, block, keylen
    cdef int *perm
    cdef unsigned char *buf

    def __cinit__(self, int kind, perm, int block):
        cdef int i
        self.kind = kind
        self.n = len(perm)
        self.block = block
        self.perm = <int *> malloc(self.n * sizeof(int))
        if self.perm == NULL:
            raise MemoryError()
        for i in range(self.n):
            self.perm[i] = perm[i]
        if kind == KIND_LEX:
            self.keylen = 4 * self.n
        elif kind == KIND_DEGREVLEX:
            self.keylen = 8 + 4 * self.n
        else:
            self.keylen = 16 + 4 * self.n
        self.buf = <unsigned char *> malloc(self.keylen)
        if self.buf == NULL:
            raise MemoryError()

    def __dealloc__(self):
        if self.perm != NULL:
            free(self.perm)
        if self.buf != NULL:
            free(self.buf)

    cdef bytes encode(self, long *exp):
        cdef int i
        cdef unsigned long long total
        cdef unsigned char *p = self.buf
        if self.kind == KIND_LEX:
            for i in range(self.n):
                _pack_u32(p + 4 * i, <unsigned long> exp[self.perm[i]])
        elif self.kind == KIND_DEGREVLEX:
            total = 0
            for i in range(self.n):
                total += <unsigned long long> exp[i]
            _pack_u64(p, total)
            for i in range(self.n):
                _pack_u32(p + 8 + 4 * i,
                          <unsigned long> (MAXVAL - exp[self.perm[self.n - 1 - i]]))
        else:
            total = 0
            for i in range(self.block):
                total += <unsigned long long> exp[self.perm[i]]
            _pack_u64(p, total)
            for i in range(self.block):
                _pack_u32(p + 8 + 4 * i,
                          <unsigned long> (MAXVAL - exp[self.perm[self.block - 1 - i]]))
            total = 0
            for i in range(self.block, self.n):
                total += <unsigned long long> exp[self.perm[i]]
            _pack_u64(p + 8 + 4 * self.block, total)
            for i in range(self.n - self.block):
                _pack_u32(p + 16 + 4 * (self.block + i),
                          <unsigned long> (MAXVAL - exp[self.perm[self.n - 1 - i]]))
        return PyBytes_FromStringAndSize(<char *> p, self.keylen)


cdef int _fill(long *dst, tuple exp, int n) except -1:
    cdef int i
    cdef long v
    for i in range(n):
        v = exp[i]
        if v < 0 or v > MAXVAL:
            raise OverflowError("exponent %d out of supported range" % v)
        dst[i] = v
    return 0


def normal_form_terms(terms, basis, descriptor):
    """Remainder of `terms` on division by `basis`, every term fully reduced.

    Reduction always uses the first basis element whose leading monomial
    divides the term under consideration, so the result is deterministic
    for a fixed basis order.
    """
    kind, perm, block = descriptor
    cdef int n = len(perm)
    cdef int nb = len(basis)
    cdef _Encoder enc = _Encoder(kind, perm, block)
    cdef long *scratch = <long *> malloc(n * sizeof(long))
    cdef long *lms = NULL
    cdef int i, j, hit
    cdef bint ok

    if scratch == NULL:
        raise MemoryError()

    # work maps key bytes -> [exponent tuple, coefficient]
    work = {}
    try:
        for exp, c in terms:
            _fill(scratch, exp, n)
            work[enc.encode(scratch)] = [exp, c]

        if nb:
            lms = <long *> malloc(nb * n * sizeof(long))
            if lms == NULL:
                raise MemoryError()
        lead = []
        for j in range(nb):
            b = basis[j]
            lm, lc = b[0]
            _fill(&lms[j * n], lm, n)
            lead.append((lm, lc, b))

        remainder = []
        while work:
            kmax = max(work)
            exp, coeff = work.pop(kmax)
            if not coeff:
                continue
            _fill(scratch, exp, n)
            hit = -1
            for j in range(nb):
                ok = True
                for i in range(n):
                    if lms[j * n + i] > scratch[i]:
                        ok = False
                        break
                if ok:
                    hit = j
                    break
            if hit < 0:
                remainder.append((kmax, exp, coeff))
                continue
            lm, lc, b = lead[hit]
            factor = coeff / lc
            shift = tuple([exp[i] - lm[i] for i in range(n)])
            for bexp, bc in b:
                if bexp is lm or bexp == lm:
                    continue
                t = tuple([bexp[i] + shift[i] for i in range(n)])
                _fill(scratch, t, n)
                tkey = enc.encode(scratch)
                slot = work.get(tkey)
                if slot is None:
                    v = -factor * bc
                    if v:
                        work[tkey] = [t, v]
                else:
                    v = slot[1] - factor * bc
                    if v:
                        slot[1] = v
                    else:
                        del work[tkey]

        remainder.sort(reverse=True)
        return [(exp, coeff) for _, exp, coeff in remainder]
    finally:
        free(scratch)
        if lms != NULL:
            free(lms)
