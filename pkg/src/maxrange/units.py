"""Unit conversion constants. All internal computation is SI (m, N, s, rad)."""

M_PER_FT = 0.3048
M_PER_NM = 1852.0
MPS_PER_KT = 1852.0 / 3600.0


def ft_to_m(ft: float) -> float:
    return ft * M_PER_FT


def m_to_ft(m: float) -> float:
    return m / M_PER_FT


def nm_to_m(nm: float) -> float:
    return nm * M_PER_NM


def m_to_nm(m: float) -> float:
    return m / M_PER_NM


def kt_to_mps(kt: float) -> float:
    return kt * MPS_PER_KT


def mps_to_kt(mps: float) -> float:
    return mps / MPS_PER_KT
