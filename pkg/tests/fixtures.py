"""Frozen reference values.

Generated by scripts/make_fixtures.py with mpmath 1.3.0 at 30 digits on 2026-10-16.
Do not edit by hand.
"""

QUAD_SQRT_D2 = 0.20730718015430471767
QUAD_EXP_Y_INV = 0.27973176363304485457
BESSEL_2K1_2 = 0.27973176363304485457
I1_Z1_NU2 = 0.44317272727711943224
I2_Z1_D2_NU2 = 0.21284638400515575847
I3_Z1_T05_NU2_MU05 = 0.50224794363888040865
I4_Z2_B02_D1_NU2 = 0.13067478067290943229
GEN_NU15_A1_Z1_RHO2 = 0.40353712489213391188
NEG_NU15_A1_Z05_ETA2 = 0.43043915959187718397
KRATZEL_NU1_RHO1_X1 = 0.27973176363304485457
QRATE_Q09_NU2_Z1 = 0.30715230983222786996
G300_03_NU0p5_X0p025 = 1.4369408519955933757
G300_03_NU0p5_X0p25 = 0.53189909520002018424
G300_03_NU0p5_X6p25 = 0.014259316136110572932
G300_03_NU2_X0p025 = 1.3514377109854894172
G300_03_NU2_X0p25 = 0.78550320707863036199
G300_03_NU2_X6p25 = 0.056659150522489728767
G300_03_NU2p7_X0p025 = 2.193104867658789782
G300_03_NU2p7_X0p25 = 1.3861688706856936669
G300_03_NU2p7_X6p25 = 0.13216816560340046728
G300_13_NU2_R0_X0125 = 0.3582584987940575589
G300_13_NU2_R1_X0125 = 0.25608681114849253296
G300_13_NU2_R3_X0125 = 0.16215953162292582277
LOGGAMMA_0p5 = 0.57236494292470008707
LOGGAMMA_3p7 = 1.4280723266653881292
LOGGAMMA_M2p5P1j = complex("-2.3441906524655925559-8.3041279866579258844j")
LOGGAMMA_10P20j = complex("-1.7029804439565110603+52.660660425584719482j")
LOGGAMMA_0p1M40j = complex("-63.388462569939019935-106.9259012676440596j")
HYP1F1_07_13_1 = 1.8058338426822048835
HYP1F1_07_13_M8 = 0.14657688764644605327
HYPERU_07_13_1 = 0.84707882175064268808
HYPERU_15_05_2 = 0.15110326938313497137
HYPERU_2_3_15 = 0.44444444444444444444
