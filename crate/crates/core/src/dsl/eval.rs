use alloc::format;

use num_bigint::BigInt;
use num_traits::One;

use super::{render, Binding, DslError, DslResult, Expr, Lin};
use crate::arith::{BiRationalFunction, BigRational, Factored, RationalFunction};
use crate::congruence::{check_congruence, Modulus, Verdict};
use crate::qkit;

/// The value of an expression: univariate unless a `pochp` factor occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Univariate(RationalFunction),
    Bivariate(BiRationalFunction),
}

impl Value {
    pub fn as_univariate(&self) -> Option<&RationalFunction> {
        match self {
            Value::Univariate(r) => Some(r),
            Value::Bivariate(_) => None,
        }
    }

    pub fn as_bivariate(&self) -> Option<&BiRationalFunction> {
        match self {
            Value::Bivariate(b) => Some(b),
            Value::Univariate(_) => None,
        }
    }
}

impl core::fmt::Display for Value {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Value::Univariate(r) => write!(f, "{r}"),
            Value::Bivariate(b) => write!(f, "{b}"),
        }
    }
}

/// Products stay factored until a sum forces expansion.
#[derive(Clone, Debug)]
enum V {
    F(Factored),
    R(RationalFunction),
    B(BiRationalFunction),
}

fn unsupported(what: &str) -> DslError {
    DslError::Argument(format!("unsupported: {what}"))
}

impl V {
    fn zero() -> V {
        V::R(RationalFunction::zero())
    }

    fn constant(c: BigRational) -> V {
        Factored::constant(c).map_or_else(V::zero, V::F)
    }

    fn is_zero(&self) -> bool {
        match self {
            V::F(_) => false,
            V::R(r) => r.is_zero(),
            V::B(b) => b.is_zero(),
        }
    }

    fn is_univariate(&self) -> bool {
        match self {
            V::F(f) => f.is_univariate(),
            V::R(_) => true,
            V::B(_) => false,
        }
    }

    fn into_r(self) -> DslResult<RationalFunction> {
        match self {
            V::F(f) => Ok(f.to_rf()?),
            V::R(r) => Ok(r),
            V::B(_) => Err(unsupported("a parametric value where a univariate one is needed")),
        }
    }

    fn into_b(self) -> DslResult<BiRationalFunction> {
        match self {
            V::F(f) => Ok(f.to_birf()),
            V::R(r) if r.den_factors().rest().is_one() => Ok(BiRationalFunction::from_rf(&r)),
            V::R(_) => Err(unsupported("combining a parametric value with a non-cyclotomic denominator")),
            V::B(b) => Ok(b),
        }
    }

    fn add(self, rhs: V, sign: i64) -> DslResult<V> {
        let rhs = if sign < 0 { rhs.neg() } else { rhs };
        if self.is_zero() {
            return Ok(rhs);
        }
        if rhs.is_zero() {
            return Ok(self);
        }
        if self.is_univariate() && rhs.is_univariate() {
            Ok(V::R(&self.into_r()? + &rhs.into_r()?))
        } else {
            Ok(V::B(&self.into_b()? + &rhs.into_b()?))
        }
    }

    fn neg(self) -> V {
        match self {
            V::F(f) => V::F(f.scale(&-BigRational::one()).unwrap()),
            V::R(r) => V::R(-&r),
            V::B(b) => V::B(-&b),
        }
    }

    fn mul(self, rhs: V) -> DslResult<V> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(V::zero());
        }
        match (self, rhs) {
            (V::F(a), V::F(b)) => Ok(V::F(a * b)),
            (a, b) if a.is_univariate() && b.is_univariate() => Ok(V::R(&a.into_r()? * &b.into_r()?)),
            (a, b) => Ok(V::B(&a.into_b()? * &b.into_b()?)),
        }
    }

    fn div(self, rhs: V) -> DslResult<V> {
        if rhs.is_zero() {
            return Err(crate::Error::DivisionByZero.into());
        }
        match rhs {
            V::F(f) => self.mul(V::F(f.inv())),
            V::R(r) if self.is_univariate() => Ok(V::R(self.into_r()?.checked_div(&r)?)),
            _ => Err(unsupported("dividing by a sum when a parameter is present")),
        }
    }

    fn pow(self, k: i64) -> DslResult<V> {
        match self {
            V::F(f) => Ok(V::F(f.pow(k))),
            V::R(r) => Ok(V::R(r.pow(k)?)),
            V::B(b) if k >= 0 => {
                let mut acc = V::constant(BigRational::one());
                for _ in 0..k {
                    acc = acc.mul(V::B(b.clone()))?;
                }
                Ok(acc)
            }
            V::B(_) => Err(unsupported("negative power of a parametric sum")),
        }
    }

    fn finish(self, parametric: bool) -> DslResult<Value> {
        Ok(if !parametric && self.is_univariate() {
            Value::Univariate(self.into_r()?)
        } else {
            Value::Bivariate(self.into_b()?)
        })
    }
}

fn arg(what: &str, ok: bool) -> DslResult<()> {
    if ok {
        Ok(())
    } else {
        Err(DslError::Argument(what.into()))
    }
}

fn nonneg(l: &Lin, b: &Binding, what: &str) -> DslResult<u64> {
    let v = l.eval(b)?;
    u64::try_from(v).map_err(|_| DslError::Argument(format!("{what} must be >= 0, got {v}")))
}

fn positive(l: &Lin, b: &Binding, what: &str) -> DslResult<i64> {
    let v = l.eval(b)?;
    arg(&format!("{what} must be > 0, got {v}"), v > 0)?;
    Ok(v)
}

fn go(e: &Expr, b: &Binding) -> DslResult<V> {
    Ok(match e {
        Expr::Int(n) => V::constant(BigRational::from_integer(n.clone())),
        Expr::Rat(n, d) => V::constant(BigRational::new(n.clone(), d.clone())),
        Expr::Var(v) => {
            let x = b.get(v).ok_or_else(|| DslError::Unbound(v.clone()))?;
            V::constant(BigRational::from_integer(BigInt::from(x)))
        }
        Expr::QPow(l) => V::F(Factored::monomial(BigRational::one(), l.eval(b)?).unwrap()),
        Expr::QInt { n, base } => {
            let e = positive(base, b, "qint base")?;
            qkit::qint_factored(n.eval(b)?, e).map_or_else(V::zero, V::F)
        }
        Expr::Poch { s, step, count } => {
            let k = nonneg(count, b, "poch count")?;
            Factored::poch(s.eval(b)?, step.eval(b)?, k).map_or_else(V::zero, V::F)
        }
        Expr::PochP { sign, s, step, count } => {
            let sg = sign.eval(b)?;
            arg("pochp sign must be 1 or -1", sg == 1 || sg == -1)?;
            let k = nonneg(count, b, "pochp count")?;
            V::F(Factored::poch_param(sg as i8, s.eval(b)?, step.eval(b)?, k))
        }
        Expr::QBinom { n, k, base } => {
            let n = nonneg(n, b, "qbinom top")?;
            let n = u32::try_from(n).map_err(|_| DslError::Argument("qbinom top too large".into()))?;
            let e = positive(base, b, "qbinom base")?;
            let e = u32::try_from(e).map_err(|_| DslError::Argument("qbinom base too large".into()))?;
            qkit::qbinom_factored(n, k.eval(b)?, e).map_or_else(V::zero, V::F)
        }
        Expr::Cyc(n) => V::F(Factored::cyclotomic(positive(n, b, "cyc index")? as u64)),
        Expr::Cyc2(n) => {
            // Φ_n(q^2) = Φ_n Φ_{2n} for odd n, Φ_{2n} for even n
            let n = positive(n, b, "cyc2 index")? as u64;
            let f = Factored::cyclotomic(2 * n);
            V::F(if n % 2 == 1 { f * Factored::cyclotomic(n) } else { f })
        }
        Expr::Neg(x) => go(x, b)?.neg(),
        Expr::Add(x, y) => go(x, b)?.add(go(y, b)?, 1)?,
        Expr::Sub(x, y) => go(x, b)?.add(go(y, b)?, -1)?,
        Expr::Mul(x, y) => go(x, b)?.mul(go(y, b)?)?,
        Expr::Div(x, y) => go(x, b)?.div(go(y, b)?)?,
        Expr::Pow(x, k) => go(x, b)?.pow(k.eval(b)?)?,
        Expr::Sum { var, lo, hi, body } => {
            let (lo, hi) = (lo.eval(b)?, hi.eval(b)?);
            arg(&format!("sum bounds need lo <= hi + 1, got {lo}..{hi}"), lo <= hi.saturating_add(1))?;
            let mut acc = V::zero();
            for k in lo..=hi {
                acc = acc.add(go(body, &b.shadowed(var, k))?, 1)?;
            }
            acc
        }
    })
}

/// Exact value of `e` under `b`; bivariate exactly when `pochp` occurs.
pub fn eval(e: &Expr, b: &Binding) -> DslResult<Value> {
    go(e, b)?.finish(e.is_parametric())
}

/// Checks `lhs ≡ rhs (mod modulus)` for univariate expressions.
pub fn congruence_eval(lhs: &Expr, rhs: &Expr, modulus: &Expr, b: &Binding) -> DslResult<Verdict> {
    let m = go(modulus, b)?;
    if m.is_zero() {
        return Err(DslError::ZeroModulus);
    }
    let m = m.into_r()?;
    if !m.den_factors().is_one() {
        return Err(DslError::ModulusDenominator);
    }
    let a = go(lhs, b)?.into_r()?;
    let c = go(rhs, b)?.into_r()?;
    let modulus = Modulus::univariate(m.num().clone(), render(modulus))?;
    Ok(check_congruence(&a, &c, &modulus)?)
}
