"""Scalar butterfly loops: the correctness reference for every pass.

Plain element-at-a-time float32 arithmetic over raw arrays, written so the
JIT wrapper can compile each function unchanged.  All passes are in-place
decimation-in-frequency: a radix-2 stage at s pairs elements at stride
n >> (s + 1) and computes top+bot / (top-bot)*W.
"""

import numpy as np

INV_SQRT2 = np.float32(0.7071067811865476)


def radix2(re, im, s, t_re, t_im, t_off):
    n = re.shape[0]
    m = n >> s
    half = m >> 1
    base = t_off[s]
    for g in range(0, n, m):
        for j in range(half):
            i0 = g + j
            i1 = i0 + half
            ar = re[i0]
            ai = im[i0]
            br = re[i1]
            bi = im[i1]
            wr = t_re[base + j]
            wi = t_im[base + j]
            re[i0] = ar + br
            im[i0] = ai + bi
            dr = ar - br
            di = ai - bi
            re[i1] = dr * wr - di * wi
            im[i1] = dr * wi + di * wr


def radix4(re, im, s, t_re, t_im, t_off):
    # Tables hold [W^j | W^2j | W^3j]; the internal W_4^1 = -j multiply is a
    # component swap plus negate, never a general complex multiply.
    n = re.shape[0]
    m = n >> s
    q = m >> 2
    base = t_off[s]
    for g in range(0, n, m):
        for j in range(q):
            i0 = g + j
            i1 = i0 + q
            i2 = i0 + 2 * q
            i3 = i0 + 3 * q
            ar = re[i0]
            ai = im[i0]
            br = re[i1]
            bi = im[i1]
            cr = re[i2]
            ci = im[i2]
            dr = re[i3]
            di = im[i3]
            t0r = ar + cr
            t0i = ai + ci
            t1r = br + dr
            t1i = bi + di
            t2r = ar - cr
            t2i = ai - ci
            t3r = bi - di
            t3i = dr - br
            w1r = t_re[base + j]
            w1i = t_im[base + j]
            w2r = t_re[base + q + j]
            w2i = t_im[base + q + j]
            w3r = t_re[base + 2 * q + j]
            w3i = t_im[base + 2 * q + j]
            re[i0] = t0r + t1r
            im[i0] = t0i + t1i
            ur = t0r - t1r
            ui = t0i - t1i
            re[i1] = ur * w2r - ui * w2i
            im[i1] = ur * w2i + ui * w2r
            vr = t2r + t3r
            vi = t2i + t3i
            re[i2] = vr * w1r - vi * w1i
            im[i2] = vr * w1i + vi * w1r
            xr = t2r - t3r
            xi = t2i - t3i
            re[i3] = xr * w3r - xi * w3i
            im[i3] = xr * w3i + xi * w3r


def radix8(re, im, s, t_re, t_im, t_off):
    # Tables hold [W^j | ... | W^7j].  The internal W_8^1 and W_8^3 factors
    # reduce to add/sub plus a single 1/sqrt(2) scale; W_8^2 = -j is a
    # swap/negate, as in radix4.
    n = re.shape[0]
    m = n >> s
    e = m >> 3
    base = t_off[s]
    for g in range(0, n, m):
        for j in range(e):
            i0 = g + j
            i1 = i0 + e
            i2 = i0 + 2 * e
            i3 = i0 + 3 * e
            i4 = i0 + 4 * e
            i5 = i0 + 5 * e
            i6 = i0 + 6 * e
            i7 = i0 + 7 * e
            a0r = re[i0]
            a0i = im[i0]
            a1r = re[i1]
            a1i = im[i1]
            a2r = re[i2]
            a2i = im[i2]
            a3r = re[i3]
            a3i = im[i3]
            a4r = re[i4]
            a4i = im[i4]
            a5r = re[i5]
            a5i = im[i5]
            a6r = re[i6]
            a6i = im[i6]
            a7r = re[i7]
            a7i = im[i7]
            s0r = a0r + a4r
            s0i = a0i + a4i
            s1r = a1r + a5r
            s1i = a1i + a5i
            s2r = a2r + a6r
            s2i = a2i + a6i
            s3r = a3r + a7r
            s3i = a3i + a7i
            d0r = a0r - a4r
            d0i = a0i - a4i
            d1r = a1r - a5r
            d1i = a1i - a5i
            d2r = a2r - a6r
            d2i = a2i - a6i
            d3r = a3r - a7r
            d3i = a3i - a7i
            # even half: 4-point kernel on the sums
            t0r = s0r + s2r
            t0i = s0i + s2i
            t1r = s1r + s3r
            t1i = s1i + s3i
            t2r = s0r - s2r
            t2i = s0i - s2i
            t3r = s1i - s3i
            t3i = s3r - s1r
            # odd half: -j/+j combinations, then the eighth-root rotations
            g0r = d0r + d2i
            g0i = d0i - d2r
            g1r = d0r - d2i
            g1i = d0i + d2r
            h0r = d1r + d3i
            h0i = d1i - d3r
            h1r = d1r - d3i
            h1i = d1i + d3r
            p0r = (h0r + h0i) * INV_SQRT2
            p0i = (h0i - h0r) * INV_SQRT2
            p1r = (h1i - h1r) * INV_SQRT2
            p1i = -(h1r + h1i) * INV_SQRT2
            w1r = t_re[base + j]
            w1i = t_im[base + j]
            w2r = t_re[base + e + j]
            w2i = t_im[base + e + j]
            w3r = t_re[base + 2 * e + j]
            w3i = t_im[base + 2 * e + j]
            w4r = t_re[base + 3 * e + j]
            w4i = t_im[base + 3 * e + j]
            w5r = t_re[base + 4 * e + j]
            w5i = t_im[base + 4 * e + j]
            w6r = t_re[base + 5 * e + j]
            w6i = t_im[base + 5 * e + j]
            w7r = t_re[base + 6 * e + j]
            w7i = t_im[base + 6 * e + j]
            re[i0] = t0r + t1r
            im[i0] = t0i + t1i
            ur = t0r - t1r
            ui = t0i - t1i
            re[i1] = ur * w4r - ui * w4i
            im[i1] = ur * w4i + ui * w4r
            vr = t2r + t3r
            vi = t2i + t3i
            re[i2] = vr * w2r - vi * w2i
            im[i2] = vr * w2i + vi * w2r
            xr = t2r - t3r
            xi = t2i - t3i
            re[i3] = xr * w6r - xi * w6i
            im[i3] = xr * w6i + xi * w6r
            yr = g0r + p0r
            yi = g0i + p0i
            re[i4] = yr * w1r - yi * w1i
            im[i4] = yr * w1i + yi * w1r
            zr = g0r - p0r
            zi = g0i - p0i
            re[i5] = zr * w5r - zi * w5i
            im[i5] = zr * w5i + zi * w5r
            qr = g1r + p1r
            qi = g1i + p1i
            re[i6] = qr * w3r - qi * w3i
            im[i6] = qr * w3i + qi * w3r
            rr = g1r - p1r
            ri = g1i - p1i
            re[i7] = rr * w7r - ri * w7i
            im[i7] = rr * w7i + ri * w7r


def fused(re, im, s, block, t_re, t_im, t_off):
    # Terminal fused block: the sub-transform size at s equals the block
    # size, so each contiguous chunk runs its remaining radix-2 stages on a
    # local working set of 2*block scalars and is stored back once.
    n = re.shape[0]
    lr = np.empty(block, np.float32)
    li = np.empty(block, np.float32)
    for g in range(0, n, block):
        for j in range(block):
            lr[j] = re[g + j]
            li[j] = im[g + j]
        size = block
        st = s
        while size >= 2:
            half = size >> 1
            base = t_off[st]
            for g2 in range(0, block, size):
                for j in range(half):
                    i0 = g2 + j
                    i1 = i0 + half
                    ar = lr[i0]
                    ai = li[i0]
                    br = lr[i1]
                    bi = li[i1]
                    wr = t_re[base + j]
                    wi = t_im[base + j]
                    lr[i0] = ar + br
                    li[i0] = ai + bi
                    dr = ar - br
                    di = ai - bi
                    lr[i1] = dr * wr - di * wi
                    li[i1] = dr * wi + di * wr
            size = half
            st += 1
        for j in range(block):
            re[g + j] = lr[j]
            im[g + j] = li[j]
