from minplus.bounds import (
    evaluate, main_bound, w_closed_form, length_function,
    InfeasibleValue, UndefinedPointError,
)

def ev(f, nm, n, d=0, i=0, **kw):
    return evaluate(f, nm, n, d=d, i=i, **kw)

# n=1, unit weights
print("mbar handled in cactus; anchors:")
print("Cov(1,0) n1:", ev("simp", "Cov", 1, 1, 0).value)          # 8
print("Typ(1,1) n1:", ev("simp", "Typ", 1, 1, 1).value)          # 48
print("Amp(1,0) n1:", ev("simp", "Amp", 1, 1, 0).value)          # 128
a11 = ev("simp", "Amp", 1, 1, 1)
print("Amp(1,1) n1 == 64*(48**144+1):", a11.value == 64 * (48 ** 144 + 1))
print("H n1:", ev("simp", "H", 1).value)                          # 128
print("GCov(1,0) n1:", ev("gen", "Cov", 1, 1, 0).value)           # 1032
print("main_B(1):", main_bound(1).value)                          # 8320

# n=2, unit weights
print("Len(1,1) n2:", ev("simp", "Len", 2, 1, 1).value)           # 0
print("Len(0,1) n2:", ev("simp", "Len", 2, 0, 1).value)           # 1
print("Len(0,3) n2:", ev("simp", "Len", 2, 0, 3).value)           # 1 (d-base first)
print("MaxW(1) n2:", ev("simp", "MaxW", 2, 1).value)              # 0
print("Cov(1,1) n2:", ev("simp", "Cov", 2, 1, 1).value)           # 128
print("Cov(2,1) n2:", ev("simp", "Cov", 2, 2, 1).value)           # 128
print("Cov(1,0) n2:", ev("simp", "Cov", 2, 1, 0).value)           # 16384
print("Typ(1,1) n2 == 3*258**4:", ev("simp", "Typ", 2, 1, 1).value == 3 * 258 ** 4)
print("Typ(1,2) n2:", ev("simp", "Typ", 2, 1, 2).value)           # 589824
print("Amp(1,0) n2:", ev("simp", "Amp", 2, 1, 0).value)           # 2048
print("Amp(2,0) n2:", ev("simp", "Amp", 2, 2, 0).value)           # 0
print("H n2:", ev("simp", "H", 2).value)                          # 0
print("main_B(2):", main_bound(2).value)                          # 0
print("main_B(2) sat:", main_bound(2, saturate=10**9).value,
      main_bound(2, saturate=10**9).saturated)                    # 0 False

try:
    ev("simp", "Amp", 2, 1, 1)
except InfeasibleValue as exc:
    print("Amp(1,1) n2 infeasible:", exc.digits_estimate)
try:
    ev("gen", "Amp", 2, 1, 1)
except InfeasibleValue as exc:
    print("GAmp(1,1) n2 infeasible:", exc.digits_estimate)
big = ev("simp", "Amp", 2, 1, 2)
print("Amp(1,2) n2 digits:", big.digits())                        # ~1.02e7
print("Amp(1,2) n2 sat:", ev("simp", "Amp", 2, 1, 2, saturate=10**9).saturated)

try:
    ev("simp", "Cov", 2, 0, 1)
except UndefinedPointError as exc:
    print("Cov(0,1) n2:", exc)

# upper family
print("W(2,2,ld=3):", ev("upper", "W", 2, 2, ld=3).value)         # (2*2*2)^2*3^2... step: 8*W(1)*3, W(1)=8*2*3=48 -> 8*48*3=1152
print("W closed form dominates:", ev("upper", "W", 2, 2, ld=3).value
      <= w_closed_form(2, 2, 3))
print("Len2(1,1):", ev("upper", "Len2", 1, 1).value)              # 0
print("C(1,1,1,0) n2:", ev("upper", "C", 2, 1, 1, ld=1, li=0).value)  # 512
try:
    ev("upper", "Len2", 2, 1)
except InfeasibleValue as exc:
    print("Len2(2,1) infeasible:", exc.digits_estimate)
print("Len2(2,1) sat:", ev("upper", "Len2", 2, 1, saturate=10**9).saturated)

lf = length_function(2)
print("length_fn(1):", lf(1).value, "saturated:", lf(1).saturated)  # 0
