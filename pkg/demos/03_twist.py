"""The twist on Gr(3,7) against the translation of E6.

Evaluates cluster variables on random integer matrices and on their twists;
tau(T) should agree with the twisted value up to frozen factors.
"""
from mclusters import grassmannian as gr

rep = gr.verify_tau("E6")
print(rep["header"])
print(f"{rep['matched']} of {rep['matched'] + rep['failed']} pairs agree")
for p in rep["pairs"][:5]:
    print(f"  {p['T']:22s} tau -> {p['tauT']:22s} frozen factor {p['exponents']}")
