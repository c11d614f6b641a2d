"""Frozen published table values used as reproduction targets.

TABLE1 maps d to (tail threshold string or None, c0 string): the rounded-up
(p-1) b_k tail threshold for the per-dimension split k (None at d = 2, where
the tail range is covered externally) and the rounded-down numeric c_0.
TABLE2 maps d to the tuple of rounded-up (p-1)(c_k + 5.1e-4) strings for
k = 2, 3, ... up to the per-dimension numeric split.
"""

TABLE1 = {
    2: (None, "0.33677"),
    3: ("0.29767", "0.31822"),
    4: ("0.25084", "0.25803"),
    5: ("0.18775", "0.21158"),
    6: ("0.17363", "0.17776"),
    7: ("0.14595", "0.15265"),
    8: ("0.12624", "0.13347"),
    9: ("0.11141", "0.11842"),
    10: ("0.09983", "0.10632"),
    11: ("0.09050", "0.09641"),
    12: ("0.08282", "0.08815"),
    13: ("0.07637", "0.08117"),
    14: ("0.07087", "0.07520"),
    15: ("0.06613", "0.07003"),
    16: ("0.06200", "0.06551"),
    17: ("0.05836", "0.06154"),
    18: ("0.05513", "0.05801"),
    19: ("0.05224", "0.05486"),
    20: ("0.04964", "0.05203"),
    21: ("0.04730", "0.04948"),
    22: ("0.04516", "0.04716"),
    23: ("0.04322", "0.04505"),
    24: ("0.04143", "0.04311"),
    25: ("0.03979", "0.04134"),
    26: ("0.03827", "0.03970"),
    27: ("0.03687", "0.03818"),
    28: ("0.03556", "0.03678"),
    29: ("0.03435", "0.03548"),
    30: ("0.03321", "0.03426"),
    31: ("0.03215", "0.03312"),
    32: ("0.03116", "0.03206"),
    33: ("0.03022", "0.03106"),
    34: ("0.02934", "0.03012"),
    35: ("0.02851", "0.02924"),
    36: ("0.02772", "0.02840"),
    37: ("0.02698", "0.02761"),
    38: ("0.02628", "0.02687"),
    39: ("0.02561", "0.02616"),
    40: ("0.02497", "0.02549"),
    41: ("0.02437", "0.02485"),
    42: ("0.02379", "0.02424"),
    43: ("0.02324", "0.02366"),
    44: ("0.02272", "0.02311"),
    45: ("0.02222", "0.02258"),
    46: ("0.02174", "0.02208"),
    47: ("0.02128", "0.02160"),
    48: ("0.02084", "0.02114"),
    49: ("0.02042", "0.02069"),
    50: ("0.02001", "0.02027"),
    51: ("0.01962", "0.01986"),
    52: ("0.01925", "0.01947"),
    53: ("0.01889", "0.01909"),
    54: ("0.01854", "0.01873"),
    55: ("0.01820", "0.01838"),
    56: ("0.01788", "0.01804"),
    57: ("0.01757", "0.01772"),
    58: ("0.01727", "0.01740"),
    59: ("0.01698", "0.01710"),
    60: ("0.01669", "0.01681"),
}

TABLE2 = {
    2: ("0.18707", "0.12746", "0.09661", "0.07813", "0.06546"),
    3: ("0.19229", "0.13788", "0.10741", "0.08827", "0.07476", "0.06512"),
    4: ("0.17022", "0.12724", "0.10159"),
    5: ("0.14910", "0.11524", "0.09395"),
    6: ("0.13163", "0.10454"),
    7: ("0.11744", "0.09536"),
    8: ("0.10583", "0.08754"),
    9: ("0.09621", "0.08084"),
    10: ("0.08815", "0.07505"),
    11: ("0.08130", "0.07002"),
    12: ("0.07541", "0.06561"),
    13: ("0.07031", "0.06171"),
    14: ("0.06585", "0.05824"),
    15: ("0.06191", "0.05514"),
    16: ("0.05841", "0.05235"),
    17: ("0.05529", "0.04982"),
    18: ("0.05248", "0.04753"),
    19: ("0.04994", "0.04544"),
    20: ("0.04763", "0.04353"),
    21: ("0.04553", "0.04176"),
    22: ("0.04361", "0.04014"),
    23: ("0.04184", "0.03864"),
    24: ("0.04021", "0.03725"),
    25: ("0.03870", "0.03595"),
    26: ("0.03730", "0.03474"),
    27: ("0.03600", "0.03361"),
    28: ("0.03478", "0.03255"),
    29: ("0.03365", "0.03156"),
    30: ("0.03259", "0.03063"),
    31: ("0.03159", "0.02974"),
    32: ("0.03065", "0.02891"),
    33: ("0.02977", "0.02813"),
    34: ("0.02894", "0.02739"),
    35: ("0.02815", "0.02668"),
    36: ("0.02741", "0.02601"),
    37: ("0.02670", "0.02537"),
    38: ("0.02603", "0.02477"),
    39: ("0.02539", "0.02419"),
    40: ("0.02478", "0.02364"),
    41: ("0.02421", "0.02312"),
    42: ("0.02365", "0.02261"),
    43: ("0.02313", "0.02213"),
    44: ("0.02262", "0.02167"),
    45: ("0.02214", "0.02123"),
    46: ("0.02168", "0.02081"),
    47: ("0.02124", "0.02040"),
    48: ("0.02081", "0.02001"),
    49: ("0.02041", "0.01963"),
    50: ("0.02001", "0.01927"),
    51: ("0.01964", "0.01892"),
    52: ("0.01927", "0.01859"),
    53: ("0.01893", "0.01826"),
    54: ("0.01859", "0.01795"),
    55: ("0.01826", "0.01765"),
    56: ("0.01795", "0.01735"),
    57: ("0.01765", "0.01707"),
    58: ("0.01736", "0.01680"),
    59: ("0.01707", "0.01653"),
    60: ("0.01680", "0.01628"),
}
