#include "dzh/gaussian.hpp"

namespace dzh {

std::string UnitI::str() const
{
    switch (exp_) {
    case 0: return "1";
    case 1: return "i";
    case 2: return "-1";
    default: return "-i";
    }
}

std::ostream& operator<<(std::ostream& os, UnitI u) { return os << u.str(); }

HeckeCoeff::HeckeCoeff(UnitI u)
{
    switch (u.exponent()) {
    case 0: re_ = 1; break;
    case 1: im_ = 1; break;
    case 2: re_ = -1; break;
    default: im_ = -1; break;
    }
}

bool HeckeCoeff::as_unit(UnitI& out) const
{
    if (im_ == 0 && re_ == 1) { out = UnitI(0); return true; }
    if (re_ == 0 && im_ == 1) { out = UnitI(1); return true; }
    if (im_ == 0 && re_ == -1) { out = UnitI(2); return true; }
    if (re_ == 0 && im_ == -1) { out = UnitI(3); return true; }
    return false;
}

HeckeCoeff& HeckeCoeff::operator+=(const HeckeCoeff& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

HeckeCoeff& HeckeCoeff::operator-=(const HeckeCoeff& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

HeckeCoeff& HeckeCoeff::operator*=(const HeckeCoeff& o)
{
    BigInt re = re_ * o.re_ - im_ * o.im_;
    BigInt im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string HeckeCoeff::str() const
{
    if (im_ == 0) return re_.str();
    std::string im = (im_ == 1) ? "i" : (im_ == -1) ? "-i" : im_.str() + "i";
    if (re_ == 0) return im;
    if (im_ > 0) return re_.str() + "+" + im;
    return re_.str() + im;
}

std::ostream& operator<<(std::ostream& os, const HeckeCoeff& c) { return os << c.str(); }

}  // namespace dzh
