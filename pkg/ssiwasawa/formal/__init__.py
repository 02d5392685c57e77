"""
Formal groups over Z_p.

Lubin–Tate groups for good Frobenius lifts, their division towers, and the
height-two Honda group carrying the plus/minus points.
"""
