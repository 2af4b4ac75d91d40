#include <array>
#include <cmath>

#include "qwalk/error.hpp"
#include "qwalk/oracle.hpp"

namespace qwalk::oracle {

CMatrix dense_expm(const CMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("dense_expm: matrix must be square");
  if (!m.allFinite()) throw InvalidArgument("dense_expm: non-finite entry");
  const auto n = m.rows();
  if (n == 0) return m;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 > 1e4) throw InvalidArgument("dense_expm: norm too large");

  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix u;
  CMatrix v;
  int s = 0;

  // Higham (2005): lowest Pade degree whose backward error bound holds.
  if (norm1 <= 9.504178996162932e-1) {
    static constexpr std::array<double, 8> c7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                                 25200.0,    1512.0,    56.0,      1.0};
    static constexpr std::array<double, 6> c5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    static constexpr std::array<double, 4> c3 = {120.0, 60.0, 12.0, 1.0};
    const CMatrix a2 = m * m;
    if (norm1 <= 1.495585217958292e-2) {
      u = m * (c3[3] * a2 + c3[1] * id);
      v = c3[2] * a2 + c3[0] * id;
    } else if (norm1 <= 2.539398330063230e-1) {
      const CMatrix a4 = a2 * a2;
      u = m * (c5[5] * a4 + c5[3] * a2 + c5[1] * id);
      v = c5[4] * a4 + c5[2] * a2 + c5[0] * id;
    } else {
      const CMatrix a4 = a2 * a2;
      const CMatrix a6 = a4 * a2;
      u = m * (c7[7] * a6 + c7[5] * a4 + c7[3] * a2 + c7[1] * id);
      v = c7[6] * a6 + c7[4] * a4 + c7[2] * a2 + c7[0] * id;
    }
  } else {
    static constexpr std::array<double, 14> b = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                                 670442572800.0,      33522128640.0,       1323241920.0,
                                                 40840800.0,          960960.0,            16380.0,
                                                 182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;
    if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    const CMatrix a = m / std::ldexp(1.0, s);
    const CMatrix a2 = a * a;
    const CMatrix a4 = a2 * a2;
    const CMatrix a6 = a4 * a2;
    u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  }

  CMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  if (!r.allFinite()) throw NumericalError("dense_expm: non-finite result");
  return r;
}

CMatrix walk_matrix(const CMatrix& h, double t) { return dense_expm(cplx(0.0, t) * h); }

}  // namespace qwalk::oracle
