//! Coefficients of the 13-stage explicit Runge-Kutta pair of orders 8 and 7
//! (Prince and Dormand), as `(hi, lo)` double-double pairs. The published
//! rational coefficients satisfy the order conditions only to about 1e-18;
//! these were refined by Gauss-Newton iteration in 80-digit arithmetic until
//! every condition up to order 8 (order 7 for the embedded weights) holds to
//! about 1e-60, so the pair keeps its order in double-double arithmetic.
//! Regenerate with `scripts/refine_tableau.py` (needs mpmath and nodepy).

pub(crate) const STAGES: usize = 13;
pub(crate) const C: [(f64, f64); STAGES] = [
    (0.0, 0.0),
    (0.055555555555555566, 2.919958471280828e-18),
    (0.08333333333333334, -3.660362239919269e-18),
    (0.125, 8.387244447935553e-18),
    (0.3125, 1.3725747529732702e-17),
    (0.37499999999999994, 1.4439757570605847e-17),
    (0.1475, 7.895905691474568e-18),
    (0.4649999999999999, 5.572977959872502e-18),
    (0.5648654513822595, -1.9873302858602652e-17),
    (0.65, -5.388693811525654e-17),
    (0.9246562776405045, -5.4265484236953044e-17),
    (1.0, -8.348640976222137e-68),
    (1.0, 1.2901004779835448e-67),
];
pub(crate) const B: [(f64, f64); STAGES] = [
    (0.041747491141530244, 3.6444811592406757e-19),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (-0.055452328611239776, -2.720225487317633e-18),
    (0.23931280720118012, -2.4984517237117144e-19),
    (0.7035106694034436, 3.033689061861137e-17),
    (-0.7597596138144611, -8.026874805289741e-18),
    (0.6605630309222863, 2.5015193947275162e-17),
    (0.15818748251012335, 6.133931437634792e-18),
    (-0.23810953875286225, 6.534075017364268e-18),
    (0.24999999999999942, 1.2001345367241171e-17),
];
pub(crate) const BHAT: [(f64, f64); STAGES] = [
    (0.02955321367635348, 8.037860186418341e-19),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (-0.8286062764877987, 2.8629702905404014e-17),
    (0.31124090005111843, 2.3481367228315422e-17),
    (2.4673451905998895, -1.3818378885602805e-16),
    (-2.5469416518419097, 1.749946232787403e-16),
    (1.4435485836767752, -6.604224664471823e-17),
    (0.07941559588112729, 2.252450267142474e-18),
    (0.044444444444444446, -1.64976553382246e-18),
    (0.0, 0.0),
];
#[rustfmt::skip]
pub(crate) const A: [&[(f64, f64)]; STAGES] = [
    &[],
    &[(0.055555555555555566, 2.919958471280828e-18)],
    &[(0.020833333333333346, -8.903602777985747e-20), (0.06249999999999999, -1.01879260185797e-19)],
    &[(0.03125, 2.0968111119838883e-18), (0.0, 0.0), (0.09375, 6.290433335951665e-18)],
    &[(0.3125, -8.906638689349117e-18), (0.0, 0.0), (-1.171875, 4.358446888364601e-17), (1.171875, -2.095208266456419e-17)],
    &[(0.03749999999999998, 3.4418848099768052e-18), (0.0, 0.0), (0.0, 0.0), (0.18750000000000006, 8.81811526489175e-18), (0.1499999999999999, 2.1797574957372904e-18)],
    &[(0.04791013711111112, -3.518413524307258e-19), (0.0, 0.0), (0.0, 0.0), (0.11224871277777777, -4.621031515196558e-18), (-0.025505673777777783, -8.418880009838178e-19), (0.012846823888888897, -1.6712124772878704e-19)],
    &[(0.016917989787292226, -1.6287190003008183e-18), (0.0, 0.0), (0.0, 0.0), (0.38784827848604436, 1.3116991796031406e-17), (0.03597736985150064, 2.3520650111799345e-18), (0.19697021421566582, -4.746630963458053e-18), (-0.17271385234050315, 1.0357058924234491e-17)],
    &[(0.06909575335919224, 3.9365756441349907e-19), (0.0, 0.0), (0.0, 0.0), (-0.634247976728853, 4.786930844930485e-17), (-0.16119757522460365, 3.771837972345826e-18), (0.1386503094588249, 9.912177396192396e-18), (0.9409286140357549, 2.1925882661881085e-17), (0.21163632648194405, 7.276135559775348e-18)],
    &[(0.1835569968390455, -5.847583374654575e-18), (0.0, 0.0), (0.0, 0.0), (-2.468768084315595, 1.6334206814810485e-16), (-0.2912868878163004, 2.2830155381024544e-17), (-0.026473020233117747, -1.4082993715470674e-18), (2.8478387641928027, -9.982985393309632e-17), (0.2813873314698499, -1.2849580096839983e-17), (0.12374489986331477, 4.776245402082109e-18)],
    &[(-1.2154248173958895, 2.1160599457602135e-17), (0.0, 0.0), (0.0, 0.0), (16.672608665945795, 1.3780747505244703e-15), (0.9157418284168195, -4.244319601882871e-17), (-6.056605804357483, 1.284397928668424e-16), (-16.0035735941562, -4.315958645876516e-17), (14.849303086297681, -1.7449906633729677e-16), (-13.371575735289856, -7.861367842114385e-16), (5.134182648179638, -9.161278420947598e-17)],
    &[(0.25886091643826437, -2.6184387617865424e-17), (0.0, 0.0), (0.0, 0.0), (-4.774485785489208, 1.9121787282449958e-16), (-0.43509301377703175, 2.4547596868103498e-17), (-3.0494833320722465, -1.7638564418128595e-16), (5.577920039936102, 6.197405702534589e-17), (6.155831589861046, -1.980807095612342e-16), (-5.06210458673694, -3.694026682701998e-16), (2.193926173180679, -1.0451730848531971e-16), (0.13462799865933495, -1.379147214587993e-17)],
    &[(0.8224275996265096, 6.757098341564361e-18), (0.0, 0.0), (0.0, 0.0), (-11.658673257277695, -2.990624187894392e-16), (-0.7576221166909369, -2.554760175815284e-17), (0.7139735881595921, -8.696629939265369e-18), (12.075774986890085, 8.506135749823794e-16), (-2.1276591139204264, -1.0304507865875483e-16), (1.9901662070489745, -5.3497367554393377e-17), (-0.23428647154404628, 5.4244878943591684e-18), (0.17589857770794237, -1.212358151512147e-17), (0.0, 0.0)],
];
