#include "modec/periods.hpp"

#include <cassert>
#include <stdexcept>

namespace modec {

PeriodEvaluator::PeriodEvaluator(const CurveBundle& b, const std::vector<CQSeries>& form,
                                 long precision_bits)
    : b_(b), bits_(precision_bits), tail_(precision_bits) {
  for (size_t j = 0; j < b.cusps.size(); ++j) {
    CQSeries f = form[j].normalized();
    if (!f.is_zero_to_prec() && f.v < 1)
      throw std::domain_error("PeriodEvaluator: form is not cuspidal at cusp " + std::to_string(j));
    F_.push_back(embed(antiderivative_2pii(f), bits_ + 32));
  }
}

Complex PeriodEvaluator::eval_F(long cusp, const Complex& u, long shift) {
  // F|T^shift (z) = F(z + shift)
  Complex z = u + Complex(Real(shift, bits_ + 32), Real(bits_ + 32));
  // memo key: evaluation points have Im = 1 or sqrt(3)/2 and dyadic Re
  long imflag = (u.im == Real(1, 8)) ? 1 : 0;
  long re2 = static_cast<long>((Real(2, bits_) * z.re).to_double() + (z.re.sign() < 0 ? -0.5 : 0.5));
  auto key = std::make_tuple(cusp, shift, re2, imflag);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  EvalResult r = eval_at(F_[cusp], z, 16);
  if (r.tail > tail_) tail_ = r.tail;
  memo_.emplace(key, r.value);
  return r.value;
}

Complex PeriodEvaluator::antiderivative_at(const MatZ& g, const Complex& u) {
  CuspNorm cn = cusp_normalize(g, b_);
  return eval_F(cn.cusp, u, cn.b);
}

Complex PeriodEvaluator::period(const MatZ& g) {
  STWord word = st_decompose(g);
  long wbits = bits_ + 32;
  Complex acc(wbits);
  Complex i_pt(0.0, 1.0, wbits);
  MatZ W;  // prefix
  for (const auto& letter : word.letters) {
    if (letter.gen == 'T') {
      Complex upper = i_pt + Complex(Real(letter.exp, wbits), Real(wbits));
      CuspNorm cn = cusp_normalize(W, b_);
      acc += eval_F(cn.cusp, upper, cn.b) - eval_F(cn.cusp, i_pt, cn.b);
      W = W * MatZ::T(letter.exp);
    } else {
      // S fixes i: the segment contributes nothing
      W = W * MatZ::S();
    }
  }
  return acc;
}

Complex PeriodEvaluator::cusp_integral(long cusp_index) {
  long wbits = bits_ + 32;
  Complex i_pt(0.0, 1.0, wbits);
  const MatZ& alpha = b_.cusps[cusp_index].alpha;
  Complex acc = antiderivative_at(MatZ(), i_pt);  // 2 pi i int_infty^i f
  acc += period(alpha);                           // int_i^{alpha(i)}
  acc -= antiderivative_at(alpha, i_pt);          // int_{alpha(i)}^{alpha(infty)}
  return acc;
}

PeriodSample sample_periods(const CurveBundle& b, PeriodEvaluator& ev, long count, long max_len,
                            std::mt19937_64& rng) {
  PeriodSample s;
  s.precision_bits = ev.bits();
  auto sgens = b.group->sl2_schreier_generators(b.group_gens);
  for (const auto& gm : sgens) {
    if (static_cast<long>(s.matrices.size()) >= count) break;
    MatZ g = lift_slnz(MatZ(gm.m[0], gm.m[1], gm.m[2], gm.m[3]), b.level);
    if (g.is_identity()) continue;
    s.matrices.push_back(g);
  }
  if (static_cast<long>(s.matrices.size()) < count) {
    auto kw = random_kernel_words(b.level, count - static_cast<long>(s.matrices.size()), max_len, rng);
    for (auto& g : kw) s.matrices.push_back(g);
  }
  for (const auto& g : s.matrices) s.values.push_back(ev.period(g));
  return s;
}

namespace {

// 2-column integer lattice: Hermite-style basis (d1, 0), (e, d2).
struct Lattice2 {
  Int d1, e, d2;  // d2 = 0 means rank <= 1
};

Lattice2 lattice_from_pairs(const std::vector<std::pair<Int, Int>>& v) {
  Lattice2 L{Int(0), Int(0), Int(0)};
  // combo achieving gcd of second coordinates
  Int gx(0), gb(0);
  for (const auto& [a, bb] : v) {
    if (bb == 0) continue;
    if (gb == 0) {
      gx = a;
      gb = bb;
      if (gb < 0) {
        gx = -gx;
        gb = -gb;
      }
      continue;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), gb.get_mpz_t(), bb.get_mpz_t());
    gx = s * gx + t * a;
    gb = g;
  }
  // reduce all to second coordinate 0; collect gcd of first coordinates
  Int d1(0);
  for (const auto& [a, bb] : v) {
    Int x = a;
    if (gb != 0) x -= (bb / gb) * gx;
    else if (bb != 0) throw std::logic_error("lattice_from_pairs");
    d1 = gcd(d1, x < 0 ? Int(-x) : x);
  }
  L.d1 = d1;
  L.d2 = gb;
  L.e = gb == 0 ? Int(0) : (d1 == 0 ? gx : mod_positive(gx, d1));
  return L;
}

}  // namespace

RecognizedLattice recognize_lattice(const PeriodSample& s) {
  long bits = s.precision_bits + 32;
  Real maxabs(0, bits);
  for (const auto& v : s.values) {
    Real a = abs(v);
    if (a > maxabs) maxabs = a;
  }
  if (maxabs.is_zero()) throw std::domain_error("recognize_lattice: all periods vanish");
  Real eps = (Real(1, bits) + maxabs) * Real::pow2(-(s.precision_bits / 2), bits);

  Real mr(bits), mi(bits);
  bool have_r = false, have_i = false;
  for (const auto& v : s.values) {
    Real ar = abs(v.re), ai = abs(v.im);
    if (ar > eps && (!have_r || ar < mr)) {
      mr = ar;
      have_r = true;
    }
    if (ai > eps && (!have_i || ai < mi)) {
      mi = ai;
      have_i = true;
    }
  }
  if (!have_r) throw std::domain_error("recognize_lattice: no sample with nonzero real part");

  auto round_ratio = [&](const Real& x, const Real& unit) {
    Rat q = nearest_rational(x / unit, Int(100));
    Real err = abs(x / unit - Real(q, bits));
    if (err > Real(1e-6, bits) * (Real(1, bits) + abs(x / unit)))
      throw std::runtime_error(
          "recognize_lattice: rounding failed the <=100 bound (sublattice or precision trouble)");
    return q;
  };

  std::vector<Rat> xs, ys;
  Int Lx(1), Ly(1);
  for (const auto& v : s.values) {
    Rat x = abs(v.re) > eps ? round_ratio(v.re, mr) : Rat(0);
    Rat y = have_i && abs(v.im) > eps ? round_ratio(v.im, mi) : Rat(0);
    xs.push_back(x);
    ys.push_back(y);
    Lx = lcm(Lx, x.get_den());
    Ly = lcm(Ly, y.get_den());
  }
  std::vector<std::pair<Int, Int>> pairs;
  for (size_t k = 0; k < xs.size(); ++k)
    pairs.emplace_back(Int(xs[k] * Rat(Lx)), Int(ys[k] * Rat(Ly)));
  Lattice2 L = lattice_from_pairs(pairs);

  RecognizedLattice out;
  Real ux = mr / Real(Lx, bits);  // x unit
  Real uy = have_i ? mi / Real(Ly, bits) : Real(bits);
  if (L.d2 == 0) {
    out.degenerate = true;
    out.om1 = Real(L.d1, bits) * ux;
    out.om2 = Complex(bits);
    for (const auto& [a, bb] : pairs) out.coords.emplace_back(L.d1 == 0 ? Int(0) : a / L.d1, Int(0));
    return out;
  }
  out.om1 = Real(L.d1, bits) * ux;
  Real re2 = Real(L.e, bits) * ux;
  Real im2 = Real(L.d2, bits) * uy;
  // shape normalization: Re(om2) reduced into [0, om1) should be 0 or om1/2
  Real half = out.om1 * Real(0.5, bits);
  if (abs(re2) <= eps) {
    out.triangular = false;
    out.om2 = Complex(Real(bits), im2);
  } else if (abs(re2 - half) <= eps * Real(4, bits) + Real(1e-6, bits) * out.om1) {
    out.triangular = true;
    out.om2 = Complex(half, im2);
  } else {
    throw std::runtime_error("recognize_lattice: lattice shape is neither rectangular nor triangular");
  }
  if (out.om2.im.sign() < 0) out.om2 = Complex(out.om2.re, -out.om2.im);
  // integer coordinates of every sample
  for (size_t k = 0; k < pairs.size(); ++k) {
    Int bcoord = pairs[k].second / L.d2;
    Int acoord = (pairs[k].first - bcoord * L.e) / L.d1;
    // verify
    Complex pred = Complex(Real(acoord, bits) * out.om1, Real(bits)) +
                   Complex(Real(bcoord, bits) * out.om2.re, Real(bcoord, bits) * out.om2.im);
    // im sign flip: om2 may have been conjugated; recompute via residual check
    Real resid = abs(pred - s.values[k]);
    if (resid > eps * Real(16, bits)) {
      bcoord = -bcoord;
      acoord = (pairs[k].first - bcoord * L.e) / L.d1;
      // (integer division may now be inexact; re-verify)
      pred = Complex(Real(acoord, bits) * out.om1, Real(bits)) +
             Complex(Real(bcoord, bits) * out.om2.re, Real(bcoord, bits) * out.om2.im);
      resid = abs(pred - s.values[k]);
      if (resid > eps * Real(16, bits))
        throw std::runtime_error("recognize_lattice: sample is not an integer combination");
    }
    out.coords.emplace_back(acoord, bcoord);
  }
  return out;
}

std::pair<EllCurveRecord, Rat> match_optimal_curve(const RecognizedLattice& lat,
                                                   const std::vector<EllCurveRecord>& isogeny_class,
                                                   long precision_bits) {
  if (isogeny_class.empty()) throw std::domain_error("match_optimal_curve: empty class");
  long bits = precision_bits + 32;
  Real tol(1e-6, bits);
  for (const auto& rec : isogeny_class) {
    EllipticCurveQ e = rec.curve();
    PeriodLattice cl = curve_periods(e, precision_bits);
    if (cl.triangular != lat.triangular) continue;
    Real r1 = cl.om1 / lat.om1;
    Real r2 = cl.om2.im / lat.om2.im;
    if (abs(r1 - r2) > tol * r1) continue;
    // Manin constant with numerator 1
    Int n = (Real(1, bits) / r1).round_to_int();
    if (n < 1) continue;
    if (abs(r1 * Real(n, bits) - Real(1, bits)) > tol) continue;
    return {rec, ratq(Int(1), n)};
  }
  throw std::runtime_error("match_optimal_curve: no curve in the class matches the period lattice");
}

long modular_degree(const CurveBundle& b, PeriodEvaluator& ev, const PeriodLattice& curve_lat) {
  long bits = ev.bits() + 32;
  CosetTable tab = enumerate_cosets(*b.gamma_bar, b.level);
  if (tab.index() != b.index)
    throw std::runtime_error("modular_degree: coset count disagrees with bundle index");
  Real s3(bits);
  mpfr_sqrt_ui(s3.v, 3, MPFR_RNDN);
  Real half(0.5, bits);
  Complex vp(half, s3 * half);    // e^{i pi / 3}
  Complex vm(-half, s3 * half);   // e^{2 i pi / 3}
  Complex i_pt(0.0, 1.0, bits);
  Complex total(bits);
  for (long j = 0; j < tab.index(); ++j) {
    const MatZ& gj = tab.reps[j];
    // T-pairing: right edge of tile j glues to the left edge of tile sigma_T(j)
    MatZ gammaT = gj * MatZ::T(1) * tab.reps[tab.sigma_t[j]].inverse();
    // S-pairing: lower-left arc half glues into tile sigma_S(j)
    MatZ gammaS = gj * MatZ::S() * tab.reps[tab.sigma_s[j]].inverse();
    Complex phiT = ev.period(gammaT);
    Complex phiS = ev.period(gammaS);
    Complex FvP = ev.antiderivative_at(gj, vp);
    Complex Fi = ev.antiderivative_at(gj, i_pt);
    Complex FvM = ev.antiderivative_at(gj, vm);
    total += phiT * conj(-FvP) + phiS * conj(Fi - FvM);
  }
  // area = (i/2) * total; degree = area / covol
  Complex area = Complex(Real(bits), half) * total;
  Real deg = area.re / curve_lat.covolume();
  if (abs(area.im) > Real(1e-4, bits) * (Real(1, bits) + abs(area.re)))
    throw std::runtime_error("modular_degree: boundary sum is not real");
  Int d = deg.round_to_int();
  if (d < 1 || abs(deg - Real(d, bits)) > Real(1e-6, bits) * (Real(1, bits) + abs(deg)))
    throw std::runtime_error("modular_degree: non-integral analytic degree " + deg.str(12) +
                             " (precision or wrong lattice)");
  return to_long(d);
}

std::vector<CuspConstant> cusp_constants(const CurveBundle& b, PeriodEvaluator& ev,
                                         const EllipticCurveQ& curve, const PeriodLattice& lat,
                                         long precision_bits) {
  long bits = precision_bits + 32;
  std::vector<CuspConstant> out;
  for (size_t j = 0; j < b.cusps.size(); ++j) {
    CuspConstant cc;
    cc.value = ev.cusp_integral(static_cast<long>(j));
    Real t = cc.value.im / lat.om2.im;
    Real s = (cc.value.re - t * lat.om2.re) / lat.om1;
    cc.coord1 = nearest_rational(s, Int(10000));
    cc.coord2 = nearest_rational(t, Int(10000));
    Real tol = Real::pow2(-(precision_bits / 3), bits);
    if (abs(s - Real(cc.coord1, bits)) > tol || abs(t - Real(cc.coord2, bits)) > tol)
      throw std::runtime_error("cusp_constants: rational rounding failed (precision)");
    long m = to_long(lcm(cc.coord1.get_den(), cc.coord2.get_den()));
    if (m == 1) {
      cc.torsion = PointC::infinity();
    } else {
      // accuracy is tail-limited, not working-precision-limited
      long acc = precision_bits;
      if (!ev.tail().is_zero()) acc = std::min(acc, -ev.tail().exp2() - 8);
      auto pt = torsion_identify_cyclotomic(curve, cc.value, lat, b.level, 4 * m, acc);
      if (!pt)
        throw std::runtime_error("cusp_constants: torsion identification failed (precision)");
      cc.torsion = *pt;
    }
    out.push_back(std::move(cc));
  }
  return out;
}

}  // namespace modec
