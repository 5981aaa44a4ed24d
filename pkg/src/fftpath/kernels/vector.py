"""Lane-parallel numpy variants of the passes.

Same math as the scalar loops, applied to whole butterfly slices at once.
This is both the optional vectorized execution path and the fallback when
numba is unavailable.  Must always agree with the scalar loops to within
1e-6 relative L2.
"""

from .loops import INV_SQRT2


def radix2(re, im, s, t_re, t_im, t_off):
    n = re.shape[0]
    m = n >> s
    half = m >> 1
    base = int(t_off[s])
    wr = t_re[base : base + half]
    wi = t_im[base : base + half]
    rv = re.reshape(-1, m)
    iv = im.reshape(-1, m)
    ar = rv[:, :half].copy()
    ai = iv[:, :half].copy()
    br = rv[:, half:]
    bi = iv[:, half:]
    dr = ar - br
    di = ai - bi
    rv[:, :half] = ar + br
    iv[:, :half] = ai + bi
    rv[:, half:] = dr * wr - di * wi
    iv[:, half:] = dr * wi + di * wr


def radix4(re, im, s, t_re, t_im, t_off):
    n = re.shape[0]
    m = n >> s
    q = m >> 2
    base = int(t_off[s])
    w1r = t_re[base : base + q]
    w1i = t_im[base : base + q]
    w2r = t_re[base + q : base + 2 * q]
    w2i = t_im[base + q : base + 2 * q]
    w3r = t_re[base + 2 * q : base + 3 * q]
    w3i = t_im[base + 2 * q : base + 3 * q]
    rv = re.reshape(-1, m)
    iv = im.reshape(-1, m)
    ar, br, cr, dr = (rv[:, k * q : (k + 1) * q] for k in range(4))
    ai, bi, ci, di = (iv[:, k * q : (k + 1) * q] for k in range(4))
    t0r = ar + cr
    t0i = ai + ci
    t1r = br + dr
    t1i = bi + di
    t2r = ar - cr
    t2i = ai - ci
    t3r = bi - di
    t3i = dr - br
    rv[:, 0:q] = t0r + t1r
    iv[:, 0:q] = t0i + t1i
    ur = t0r - t1r
    ui = t0i - t1i
    rv[:, q : 2 * q] = ur * w2r - ui * w2i
    iv[:, q : 2 * q] = ur * w2i + ui * w2r
    vr = t2r + t3r
    vi = t2i + t3i
    rv[:, 2 * q : 3 * q] = vr * w1r - vi * w1i
    iv[:, 2 * q : 3 * q] = vr * w1i + vi * w1r
    xr = t2r - t3r
    xi = t2i - t3i
    rv[:, 3 * q : 4 * q] = xr * w3r - xi * w3i
    iv[:, 3 * q : 4 * q] = xr * w3i + xi * w3r


def radix8(re, im, s, t_re, t_im, t_off):
    n = re.shape[0]
    m = n >> s
    e = m >> 3
    base = int(t_off[s])
    w = [
        (t_re[base + k * e : base + (k + 1) * e], t_im[base + k * e : base + (k + 1) * e])
        for k in range(7)
    ]
    rv = re.reshape(-1, m)
    iv = im.reshape(-1, m)
    a = [rv[:, k * e : (k + 1) * e] for k in range(8)]
    b = [iv[:, k * e : (k + 1) * e] for k in range(8)]
    sr = [a[k] + a[k + 4] for k in range(4)]
    si = [b[k] + b[k + 4] for k in range(4)]
    dr = [a[k] - a[k + 4] for k in range(4)]
    di = [b[k] - b[k + 4] for k in range(4)]
    t0r = sr[0] + sr[2]
    t0i = si[0] + si[2]
    t1r = sr[1] + sr[3]
    t1i = si[1] + si[3]
    t2r = sr[0] - sr[2]
    t2i = si[0] - si[2]
    t3r = si[1] - si[3]
    t3i = sr[3] - sr[1]
    g0r = dr[0] + di[2]
    g0i = di[0] - dr[2]
    g1r = dr[0] - di[2]
    g1i = di[0] + dr[2]
    h0r = dr[1] + di[3]
    h0i = di[1] - dr[3]
    h1r = dr[1] - di[3]
    h1i = di[1] + dr[3]
    p0r = (h0r + h0i) * INV_SQRT2
    p0i = (h0i - h0r) * INV_SQRT2
    p1r = (h1i - h1r) * INV_SQRT2
    p1i = -(h1r + h1i) * INV_SQRT2

    def emit(k, zr, zi, widx):
        if widx is None:
            rv[:, k * e : (k + 1) * e] = zr
            iv[:, k * e : (k + 1) * e] = zi
        else:
            wr, wi = w[widx]
            rv[:, k * e : (k + 1) * e] = zr * wr - zi * wi
            iv[:, k * e : (k + 1) * e] = zr * wi + zi * wr

    emit(0, t0r + t1r, t0i + t1i, None)
    emit(1, t0r - t1r, t0i - t1i, 3)
    emit(2, t2r + t3r, t2i + t3i, 1)
    emit(3, t2r - t3r, t2i - t3i, 5)
    emit(4, g0r + p0r, g0i + p0i, 0)
    emit(5, g0r - p0r, g0i - p0i, 4)
    emit(6, g1r + p1r, g1i + p1i, 2)
    emit(7, g1r - p1r, g1i - p1i, 6)


def fused(re, im, s, block, t_re, t_im, t_off):
    # At the terminal position each chunk is its own sub-transform, so the
    # remaining stages are exactly the radix-2 stages s..L-1.
    size = block
    st = s
    while size >= 2:
        radix2(re, im, st, t_re, t_im, t_off)
        size >>= 1
        st += 1
