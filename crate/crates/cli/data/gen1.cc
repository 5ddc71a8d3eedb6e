# A 1-cocycle on rp2.sc representing the generator of H^1 with F2 coefficients.
1 3
1 4
2 3
2 5
4 5
