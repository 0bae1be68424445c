"""Count 2x2 integer matrices with an integer eigenvalue and fit the growth exponent."""

from matgalois.census import CensusSpec, fit_power_log, run_census

counts = {}
for T in (4, 8, 16, 32):
    rec = run_census(CensusSpec(n=2, T=T, statistics=("inteig", "singular")))
    counts[T] = rec.count("inteig")
    print(f"T={T:3d}  box={rec.total:>10d}  inteig={counts[T]:>8d}  singular={rec.count('singular'):>8d}")

fit = fit_power_log(sorted(counts.items()))
print(f"fit: count ~ {fit.c:.3g} * T^{fit.a:.3f} * (log T)^{fit.b}")
