"""Stored q-aspect expansions of Q_1, Q_2, Q_3.

SERIES[(k, parity)][h] is the coefficient of q^(-h/2), given as a list of
rationals c_0, c_1, ... meaning c_0 + c_1 g + c_2 g^2 + ...
"""
from __future__ import annotations

from fractions import Fraction as F


def _lin(pairs, sign_start=-1):
    """(a, b) pairs for alternating terms -(a g - b)/q, +(a g - b)/q^2, ..."""
    out = {}
    s = sign_start
    for n, (a, b) in enumerate(pairs, start=1):
        out[2 * n] = [F(-s * b), F(s * a)]
        s = -s
    return out


_Q1_ODD = {0: [F(1), F(1)]}
_Q1_ODD.update(_lin([
    (1, 1), (1, 1), (2, 4), (4, 10), (7, 23), (11, 43), (18, 82), (32, 164),
    (55, 317), (89, 569), (147, 1029), (251, 1905), (421, 3451), (693, 6099),
    (1149, 10795), (1919, 19163), (3190, 33748), (5271, 58885), (8712, 102452),
    (14436, 178220),
]))

_Q1_EVEN = {0: [F(1), F(1)]}
_Q1_EVEN.update(_lin([
    (1, 0), (1, 1), (2, 3), (4, 9), (7, 20), (11, 39), (18, 75), (32, 153),
    (55, 296), (89, 535), (147, 974), (251, 1813), (421, 3292), (693, 5837),
    (1149, 10364), (1919, 18445), (3190, 32547), (5271, 56896), (8712, 99170),
    (14436, 172790),
]))
for _h, _c in zip(range(1, 41, 2), [-1, 0, -1, 1, -3, 4, -7, 11, -21, 34, -55, 92, -159,
                                      262, -431, 718, -1201, 1989, -3282, 5430]):
    if _c:
        _Q1_EVEN[_h] = [F(_c)]


def _rows(rows):
    return {h: [F(c) for c in coeffs] for h, coeffs in rows.items()}


_KS2 = ["1", "13/6", "3/2", "1/3"]
_Q2_ODD = _rows({
    0: _KS2,
    2: ["1", "4/3", "-1", "-4/3"],
    4: ["1", "1/6", "-13/2", "13/3"],
    6: ["11", "-149/3", "54", "-46/3"],
    8: ["-246", "2971/6", "-597/2", "163/3"],
    10: ["2364", "-9661/3", "1376", "-554/3"],
    12: ["-16405", "51295/3", "-5701", "1826/3"],
    14: ["95135", "-80929", "22265", "-1982"],
})
_Q2_EVEN = _rows({
    0: _KS2,
    1: ["-2", "-3", "-1"],
    2: ["1", "-2/3", "-2", "-4/3"],
    3: ["0", "1", "3"],
    4: ["0", "-11/6", "-7/2", "13/3"],
    5: ["0", "8", "-10"],
    6: ["10", "-95/3", "44", "-46/3"],
    7: ["40", "-80", "36"],
    8: ["-176", "2275/6", "-525/2", "163/3"],
    9: ["-368", "445", "-127"],
    10: ["1809", "-7945/3", "1249", "-554/3"],
    11: ["2386", "-2053", "427"],
    12: ["-13107", "43855/3", "-5274", "1826/3"],
    13: ["-12584", "8495", "-1399"],
    14: ["78675", "-71035", "20866", "-1982"],
})

_KS3 = ["1", "17/5", "841/180", "10/3", "47/36", "4/15", "1/45"]
_Q3_ODD = _rows({
    0: _KS3,
    2: ["1", "44/15", "34/15", "-4/3", "-3", "-8/5", "-4/15"],
    4: ["2", "-8/5", "-79/180", "-13/3", "-245/36", "44/15", "101/45"],
    6: ["-20", "-93/10", "4309/45", "-655/6", "110/9", "712/15", "-764/45"],
    8: ["-244", "10303/6", "-69446/45", "-1615/2", "15317/9", "-2408/3", "5416/45"],
    10: ["11168", "-295321/30", "-6151429/180", "112353/2", "-1175831/36",
         "126548/15", "-36469/45"],
    12: ["19372", "-10542424/15", "62711692/45", "-1076052", "3631316/9",
         "-1105616/15", "236128/45"],
    14: ["-6415066", "678778057/30", "-1575047267/60", "28666535/2", "-48772345/12",
         "8705044/15", "-494627/15"],
})
_Q3_EVEN = _rows({
    0: _KS3,
    1: ["-3", "-87/10", "-29/3", "-31/6", "-4/3", "-2/15"],
    2: ["3", "27/5", "19/15", "-11/3", "-4", "-26/15", "-4/15"],
    3: ["-1", "23/15", "43/6", "23/2", "22/3", "22/15"],
    4: ["1", "-127/30", "-2089/180", "-26/3", "-113/36", "22/5", "101/45"],
    5: ["3", "23/3", "8/3", "49/3", "-44/3", "-12"],
    6: ["-15", "-133/10", "2899/45", "-331/6", "248/9", "532/15", "-764/45"],
    7: ["17", "-2037/10", "529/2", "-89/3", "-192", "1348/15"],
    8: ["-160", "17272/15", "-94327/90", "-3073/6", "11567/9", "-3564/5", "5416/45"],
    9: ["-1694", "41309/15", "2114", "-16985/3", "3372", "-9484/15"],
    10: ["7225", "-192403/30", "-4606789/180", "264991/6", "-997535/36",
         "117064/15", "-36469/45"],
    11: ["10251", "836686/15", "-837925/6", "652081/6", "-106948/3", "63454/15"],
    12: ["24566", "-16340081/30", "99784049/90", "-2695787/3", "3215291/9",
         "-1042162/15", "236128/45"],
    13: ["559196", "-22836967/10", "2664154", "-8063951/6", "311738", "-408802/15"],
    14: ["-5043319", "180627927/10", "-434205189/20", "24762961/2", "-44213885/12",
         "2765414/5", "-494627/15"],
})

SERIES = {
    (1, "odd"): _Q1_ODD,
    (1, "even"): _Q1_EVEN,
    (2, "odd"): _Q2_ODD,
    (2, "even"): _Q2_EVEN,
    (3, "odd"): _Q3_ODD,
    (3, "even"): _Q3_EVEN,
}


def coefficient_at(k: int, parity: str, h: int, g: int) -> F:
    poly = SERIES[(k, parity)].get(h)
    if poly is None:
        return F(0)
    return sum(c * g ** i for i, c in enumerate(poly))
