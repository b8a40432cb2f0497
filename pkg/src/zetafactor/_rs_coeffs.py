"""Chebyshev tables for the Riemann-Siegel correction terms C_0..C_4.

Generated by scripts/gen_rs_coeffs.py; do not edit by hand.  Each table
holds Chebyshev coefficients of C_j over the fractional part p of
sqrt(t / 2pi), on the mapped variable x = 2p - 1 in [-1, 1].
"""

import numpy as np

CHEB_C0 = np.array([
    np.float64(0.6426672862397682),
    np.float64(-1.7176463578894855e-16),
    np.float64(0.2719729999978549),
    np.float64(-2.003086131649546e-16),
    np.float64(0.01073860581934011),
    np.float64(1.5223454600536544e-16),
    np.float64(-0.0013743815296339325),
    np.float64(-1.3420677082051957e-16),
    np.float64(-0.00012468221880321593),
    np.float64(-9.614813431917819e-17),
    np.float64(-5.764599706139149e-07),
    np.float64(4.807406715958909e-17),
    np.float64(2.728067428513633e-07),
    np.float64(-6.20956700811359e-17),
    np.float64(8.077952912680256e-09),
    np.float64(2.3035490513969768e-17),
    np.float64(-2.0884616286909897e-10),
    np.float64(2.243456467447491e-16),
    np.float64(-1.3115879483915625e-11),
    np.float64(-3.7057093435516586e-17),
    np.float64(-1.439017076977033e-14),
    np.float64(3.7557864968428963e-17),
    np.float64(1.0117588050961848e-14),
    np.float64(-1.0716510804325066e-16),
    np.float64(2.804320584309363e-17),
    np.float64(-2.403703357979453e-17),
    np.float64(7.010801460773406e-18),
    np.float64(0.0),
    np.float64(4.006172263299089e-17),
    np.float64(5.2080239422888147e-17),
    np.float64(-1.8428392411175807e-16),
    np.float64(-2.083209576915526e-16),
    np.float64(-7.223629362261167e-17),
    np.float64(-1.2018516789897266e-17),
    np.float64(1.0416047884577632e-16),
    np.float64(-1.7627157958515998e-16),
    np.float64(-1.963024409016554e-16),
    np.float64(-2.0782018615864052e-16),
    np.float64(2.083209576915527e-16),
    np.float64(6.409875621278549e-17),
    np.float64(0.0),
    np.float64(6.409875621278542e-17),
    np.float64(-2.403703357979452e-17),
    np.float64(2.2434564674474894e-16),
    np.float64(-1.602468905319635e-17),
    np.float64(1.0015430658247715e-16),
    np.float64(-6.40987562127854e-17),
    np.float64(-1.2018516789897262e-17),
    np.float64(-9.614813431917799e-17),
    np.float64(-7.211110073938355e-17),
    np.float64(-1.1217282337237442e-16),
    np.float64(-8.012344526598169e-17),
    np.float64(1.9429935477000565e-16),
])

CHEB_C1 = np.array([
    np.float64(2.124593680485227e-18),
    np.float64(0.010697913921002998),
    np.float64(1.0265816424703923e-17),
    np.float64(0.01717065124337788),
    np.float64(1.3020059855722046e-17),
    np.float64(0.002793211149788467),
    np.float64(8.012344526598183e-18),
    np.float64(-3.6375653719275486e-05),
    np.float64(-1.8778932484214493e-18),
    np.float64(-2.710895523117477e-05),
    np.float64(-7.010801460773409e-18),
    np.float64(-1.048374986678406e-06),
    np.float64(-2.003086131649546e-18),
    np.float64(5.886467164519246e-08),
    np.float64(-1.3020059855722044e-17),
    np.float64(4.322967250674335e-09),
    np.float64(-4.0061722632990905e-18),
    np.float64(-1.136960376710378e-11),
    np.float64(9.01388759242295e-18),
    np.float64(-6.699843872010731e-12),
    np.float64(1.8778932484214482e-17),
    np.float64(-1.0080330648913168e-13),
    np.float64(2.0030861316495445e-18),
    np.float64(5.1417969070611545e-15),
    np.float64(-7.495923883282281e-18),
    np.float64(1.542376321370149e-16),
])

CHEB_C2 = np.array([
    np.float64(0.003146115853988912),
    np.float64(4.381750912983382e-19),
    np.float64(-0.00230878388453075),
    np.float64(3.442804288772657e-19),
    np.float64(5.769820766690013e-05),
    np.float64(-2.0030861316495453e-18),
    np.float64(0.0003523886202366601),
    np.float64(1.4553672675266233e-18),
    np.float64(2.524666745868529e-05),
    np.float64(1.3771217155090625e-18),
    np.float64(-3.4428211971937025e-06),
    np.float64(-2.5038576645619316e-19),
    np.float64(-3.5350745566165304e-07),
    np.float64(7.746309649738476e-19),
    np.float64(3.730830184190462e-09),
    np.float64(-6.103153057369707e-19),
    np.float64(1.277695187049677e-09),
    np.float64(-1.3145252738950142e-18),
    np.float64(2.1874618597025735e-11),
    np.float64(2.816839872632173e-19),
    np.float64(-1.9141403439024793e-12),
    np.float64(-1.0328412866317964e-18),
    np.float64(-6.562859759672236e-14),
    np.float64(2.2612964533074943e-18),
    np.float64(1.2595655981578795e-15),
])

CHEB_C3 = np.array([
    np.float64(-4.592220715632035e-19),
    np.float64(7.123256221203983e-05),
    np.float64(7.007867252572752e-19),
    np.float64(0.0002323430529816481),
    np.float64(-4.733855897062402e-19),
    np.float64(-0.0001292991204547249),
    np.float64(1.7214021443863282e-19),
    np.float64(1.807449641367145e-05),
    np.float64(-8.998238482019444e-20),
    np.float64(6.526185187220338e-06),
    np.float64(-1.0954377282458452e-19),
    np.float64(-1.1696365378514128e-07),
    np.float64(-3.1298220807024157e-20),
    np.float64(-7.349476126537336e-08),
    np.float64(7.824555201756036e-21),
    np.float64(-1.7750910080182534e-09),
    np.float64(-9.585080122151145e-20),
    np.float64(2.555552959342559e-10),
    np.float64(1.956138800439008e-19),
    np.float64(1.137663657121378e-11),
    np.float64(2.7581557086190024e-19),
    np.float64(-3.3498639873495404e-13),
    np.float64(-1.232367444276575e-19),
    np.float64(-2.553743531930222e-14),
])

CHEB_C4 = np.array([
    np.float64(0.0001676574524670172),
    np.float64(-1.1424070660178865e-16),
    np.float64(-0.0002272876894342137),
    np.float64(5.852767290913517e-18),
    np.float64(6.47738718844968e-05),
    np.float64(1.5766478731538414e-18),
    np.float64(-8.492200500138876e-06),
    np.float64(-1.2812709142875513e-19),
    np.float64(-2.6161407245187253e-06),
    np.float64(2.4256121125443716e-19),
    np.float64(8.336764968725961e-07),
    np.float64(-5.477188641229226e-20),
    np.float64(6.324704037562991e-08),
    np.float64(8.802624601975541e-20),
    np.float64(-1.0059949403021023e-08),
    np.float64(-6.064030281360928e-20),
    np.float64(-7.822677203032611e-10),
    np.float64(-1.917016024430229e-19),
    np.float64(3.167658312829155e-11),
    np.float64(2.836401260636563e-20),
    np.float64(3.5006945831957494e-12),
    np.float64(-1.6040338163599868e-19),
    np.float64(-1.431479829661591e-14),
    np.float64(1.377855267559227e-19),
    np.float64(-7.269309115529023e-15),
])

TABLES = (CHEB_C0, CHEB_C1, CHEB_C2, CHEB_C3, CHEB_C4)
