"""Tabulated bt-monotone Hurwitz numbers, stored as Π μ_i · H_{g,n}(μ).

Keys are (2g, μ).  Values are expressions in b and t read by exactnum.parse.
"""
from __future__ import annotations

from fractions import Fraction
from math import prod

from .exactnum import parse

ONE_PART = {
    (0, (2,)): "t",
    (0, (3,)): "t^2 + t",
    (0, (4,)): "t^3 + 3*t^2 + t",
    (0, (5,)): "t^4 + 6*t^3 + 6*t^2 + t",
    (0, (6,)): "t^5 + 10*t^4 + 20*t^3 + 10*t^2 + t",
    (1, (2,)): "b*t",
    (1, (3,)): "3*b*t^2 + 3*b*t",
    (1, (4,)): "6*b*t^3 + 17*b*t^2 + 6*b*t",
    (1, (5,)): "10*b*t^4 + 55*b*t^3 + 55*b*t^2 + 10*b*t",
    (1, (6,)): "15*b*t^5 + 135*b*t^4 + 262*b*t^3 + 135*b*t^2 + 15*b*t",
    (2, (2,)): "(b^2+b+1)*t",
    (2, (3,)): "(7*b^2+5*b+5)*t^2 + (7*b^2+5*b+5)*t",
    (2, (4,)): "(25*b^2+15*b+15)*t^3 + (68*b^2+40*b+40)*t^2 + (25*b^2+15*b+15)*t",
    (2, (5,)): "(65*b^2+35*b+35)*t^4 + (335*b^2+175*b+175)*t^3 + (335*b^2+175*b+175)*t^2"
               " + (65*b^2+35*b+35)*t",
    (2, (6,)): "(140*b^2+70*b+70)*t^5 + (1162*b^2+560*b+560)*t^4 + (2202*b^2+1050*b+1050)*t^3"
               " + (1162*b^2+560*b+560)*t^2 + (140*b^2+70*b+70)*t",
    (3, (2,)): "(b^3+2*b^2+2*b)*t",
    (3, (3,)): "(15*b^3+24*b^2+24*b)*t^2 + (15*b^3+24*b^2+24*b)*t",
    (3, (4,)): "(90*b^3+127*b^2+127*b)*t^3 + (238*b^3+332*b^2+332*b)*t^2 + (90*b^3+127*b^2+127*b)*t",
    (3, (5,)): "(350*b^3+455*b^2+455*b)*t^4 + (1720*b^3+2195*b^2+2195*b)*t^3"
               " + (1720*b^3+2195*b^2+2195*b)*t^2 + (350*b^3+455*b^2+455*b)*t",
    (3, (6,)): "(1050*b^3+1288*b^2+1288*b)*t^5 + (8196*b^3+9823*b^2+9823*b)*t^4"
               " + (15246*b^3+18148*b^2+18148*b)*t^3 + (8196*b^3+9823*b^2+9823*b)*t^2"
               " + (1050*b^3+1288*b^2+1288*b)*t",
}

TWO_PARTS = {
    (0, (1, 1)): "(b+1)*t",
    (0, (2, 1)): "(2*b+2)*t^2 + (2*b+2)*t",
    (0, (3, 1)): "(3*b+3)*t^3 + (9*b+9)*t^2 + (3*b+3)*t",
    (0, (2, 2)): "(4*b+4)*t^3 + (10*b+10)*t^2 + (4*b+4)*t",
    (1, (1, 1)): "(b^2+b)*t",
    (1, (2, 1)): "(6*b^2+6*b)*t^2 + (6*b^2+6*b)*t",
    (1, (3, 1)): "(18*b^2+18*b)*t^3 + (51*b^2+51*b)*t^2 + (18*b^2+18*b)*t",
    (1, (2, 2)): "(22*b^2+22*b)*t^3 + (56*b^2+56*b)*t^2 + (22*b^2+22*b)*t",
    (2, (1, 1)): "(b^3+2*b^2+2*b+1)*t",
    (2, (2, 1)): "(14*b^3+24*b^2+20*b+10)*t^2 + (14*b^3+24*b^2+20*b+10)*t",
    (2, (3, 1)): "(75*b^3+120*b^2+90*b+45)*t^3 + (204*b^3+324*b^2+240*b+120)*t^2"
                 " + (75*b^3+120*b^2+90*b+45)*t",
    (2, (2, 2)): "(86*b^3+136*b^2+100*b+50)*t^3 + (220*b^3+348*b^2+256*b+128)*t^2"
                 " + (86*b^3+136*b^2+100*b+50)*t",
}

THREE_PARTS = {
    (0, (1, 1, 1)): "(4*b^2+8*b+4)*t^2 + (4*b^2+8*b+4)*t",
    (0, (2, 1, 1)): "(10*b^2+20*b+10)*t^3 + (28*b^2+56*b+28)*t^2 + (10*b^2+20*b+10)*t",
    (1, (1, 1, 1)): "(12*b^3+24*b^2+12*b)*t^2 + (12*b^3+24*b^2+12*b)*t",
    (1, (2, 1, 1)): "(58*b^3+116*b^2+58*b)*t^3 + (158*b^3+316*b^2+158*b)*t^2 + (58*b^3+116*b^2+58*b)*t",
    (2, (1, 1, 1)): "(28*b^4+76*b^3+88*b^2+60*b+20)*t^2 + (28*b^4+76*b^3+88*b^2+60*b+20)*t",
    (2, (2, 1, 1)): "(236*b^4+612*b^3+656*b^2+420*b+140)*t^3 + (628*b^4+1624*b^3+1732*b^2+1104*b+368)*t^2"
                    " + (236*b^4+612*b^3+656*b^2+420*b+140)*t",
}

TABLES = {1: ONE_PART, 2: TWO_PARTS, 3: THREE_PARTS}


def tabulated_value(twice_g, mu):
    """H_{g,n}(μ) from the tables (the stored entry divided by Π μ_i)."""
    text = TABLES[len(mu)][(twice_g, tuple(mu))]
    return parse(text) * Fraction(1, prod(mu))


def all_entries():
    """(2g, μ, H) for every tabulated cell, in table order."""
    return [(twice_g, mu, tabulated_value(twice_g, mu))
            for table in TABLES.values() for (twice_g, mu) in table]
