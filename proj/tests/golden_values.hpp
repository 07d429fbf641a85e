#pragma once

#include <array>

// Reference values computed once with an independent high-precision
// evaluation (closed-form matrix formulas evaluated symbolically; trajectories
// integrated with an adaptive 8th-order method at rtol 1e-12) and frozen here.
// Unit tests compare the library against these within stated tolerances.

namespace golden {

// x* = (psi, theta, phi) = (0.3, 0.2, -0.1)
inline constexpr std::array<double, 9> kRateMatrixAtXStar = {
    1.0, 0.0, -0.19866933079506122,
    0.0, 0.95533648912560598, 0.28962947762551555,
    0.0, -0.29552020666133955, 0.93629336358419923};

inline constexpr std::array<double, 9> kDcmAtXStar = {
    0.97517032720181596, 0.1537919979889642, 0.15934507930797792,
    -0.09784339500725571, 0.94470248599489426, -0.31299182578546797,
    -0.19866933079506122, 0.28962947762551555, 0.93629336358419923};

inline constexpr std::array<double, 4> kQuatAtXStar = {
    0.98185617286608085, 0.15343930202422257, 0.09115754934299071,
    -0.064071347706071161};

// Truth trajectory samples for the built-in sinusoid signals,
// x0=(0.1,0.1,0.1), v0=(0.5,-0.4,0.3), r0=(1,1,1); states at t=0,2,...,20 s.
inline constexpr int kTruthSampleCount = 11;
inline constexpr double kTruthSampleSpacing = 2.0;
inline constexpr std::array<std::array<double, 9>, 11> kTruthSamples = {{
    {0.10000000000000001, 0.10000000000000001, 0.10000000000000001, 0.5,
     -0.40000000000000002, 0.29999999999999999, 1.0, 1.0, 1.0},
    {2.1409348015686702, -0.57776175213687453, 1.7939936566165107,
     2.2421232330676508, -1.0127419178915447, 1.5069635657543909,
     3.5057250901685766, 0.16783736578712952, 2.8715712777902413},
    {4.8800783161309678, -0.57874909554009857, 0.2758412644332755,
     2.9215507217808585, -0.29520283926381025, 2.3445448085019023,
     9.2436003000218836, -1.0089236780268436, 6.3606348432108994},
    {5.3172809035905813, 1.0976682848028061, -0.5271821265386748,
     2.3570389983673872, -1.6067598953954954, 3.3605583317537757,
     14.006520628569049, -2.9924602892789243, 12.370700559037051},
    {3.2463878767865184, 0.087871579281232598, -4.7511468161402624,
     4.0863512043440577, -1.9127091219592849, 2.2101669910133506,
     20.090976742429888, -6.1253987568792905, 17.793286652301997},
    {4.7900796556219332, 0.52277070465744668, -5.820539306486725,
     4.8344010975319502, -1.3837278406144091, 1.0638010844813683,
     28.903641615697079, -10.002532119881481, 20.488595054507254},
    {3.0544097445691398, 0.70258586597427153, -8.5344032122463958,
     6.1719859848574163, -1.8938841230614771, 2.3978264877520323,
     39.860139753077213, -13.128869995679304, 24.164654565390961},
    {4.4340775191375457, 0.19453072889941991, -10.386773279772553,
     5.6884746392397201, -2.7200702720142171, 0.77803712556120175,
     51.469763510775856, -17.702590403564411, 27.661255576540501},
    {6.5233690810938034, 1.2859773699165213, -10.295156279056151,
     4.5907435515829773, -3.3179587549079077, -0.32202481217663864,
     61.685379111407677, -24.69393698034721, 28.162154891564626},
    {8.5624536974354157, -0.32245427745823391, -8.6354611305703237,
     6.320049312550438, -3.3491954806463564, -1.3059210361791806,
     72.343570758749706, -31.171790890927483, 26.558731131405811},
    {11.802196605286827, -0.55041275962254388, -10.455027678227019,
     5.1930019786782218, -4.3286061796106026, -0.94053567910283853,
     84.295441824558196, -38.902896080845935, 24.361780773485471},
}};

// Built-in beacon circles at t = 0, ranges from r = (1,1,1).
inline constexpr std::array<double, 4> kRangesAtOrigin = {
    1.4142135623730951, 60.016664352494629, 84.15461959987698,
    102.77159140540736};
inline constexpr double kBeaconDetAtZero = 219600.0;

// Bound-recursion arithmetic: lambda=0.5, dt=1, R=1, D=0.1, N=0.05, k=0.2.
inline constexpr double kBoundExample = 0.39569310496803078;

// Scalar hybrid-condition cases (dt = 1).
inline constexpr double kProductPass = 0.1353352832366127;   // e^-2
inline constexpr double kProductFail = 1.8472640247326626;   // 0.25 e^2
inline constexpr double kEulerE = 2.7182818284590451;

// Attitude-stage regression: built-in signals, k = 1/3, fixes every 0.5 s,
// truth x0 = (0.1,0.1,0.1), estimate started at (-0.1,-0.1,-0.1); Euclidean
// error norms immediately before/after each update, reference run at
// dt = 1e-4 (events 1..16).
inline constexpr int kAttitudeRegressionEvents = 16;
inline constexpr std::array<std::array<double, 2>, 16> kAttitudeRegression = {{
    {0.38447141071903079, 0.12815713690634356},
    {0.13482253345072007, 0.044940844483573203},
    {0.041570864164254977, 0.013856954721418223},
    {0.012761706478707002, 0.0042539021595687119},
    {0.0040482622858456522, 0.0013494207619484393},
    {0.0012973513148030879, 0.00043245043826760246},
    {0.00042910143912165233, 0.00014303381304063407},
    {0.00017566356273542177, 5.8554520911495635e-05},
    {9.823503124406087e-05, 3.2745010414556681e-05},
    {4.2982269160729372e-05, 1.4327423053473274e-05},
    {6.5171467088197317e-06, 2.1723822360111598e-06},
    {2.5960406931536492e-06, 8.653468978063207e-07},
    {8.1965245718387929e-07, 2.7321748556027957e-07},
    {2.3087881916667122e-07, 7.6959606488590133e-08},
    {7.1214689844056794e-08, 2.3738230055675004e-08},
    {2.3639953143308436e-08, 7.879984373466918e-09},
}};

}  // namespace golden
