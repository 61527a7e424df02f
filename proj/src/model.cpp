#include "grz/model.hpp"

#include <bit>
#include <unordered_map>

namespace grz {

namespace {

class Evaluator {
public:
  Evaluator(const Model& m) : model_(m), all_(m.frame.worlds()) {}

  WorldSet eval(const Formula& f) {
    auto [it, fresh] = cache_.try_emplace(f.node(), 0);
    if (!fresh) return it->second;
    WorldSet result = compute(f);
    cache_[f.node()] = result;
    return result;
  }

private:
  WorldSet compute(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Var: {
        auto it = model_.valuation.find(f.name());
        return it == model_.valuation.end() ? 0 : (it->second & all_);
      }
      case Formula::Kind::Top: return all_;
      case Formula::Kind::Bottom: return 0;
      case Formula::Kind::Not: return all_ & ~eval(f.child());
      case Formula::Kind::And: return eval(f.left()) & eval(f.right());
      case Formula::Kind::Or: return eval(f.left()) | eval(f.right());
      case Formula::Kind::Implies:
        return (all_ & ~eval(f.left())) | eval(f.right());
      case Formula::Kind::Iff: {
        WorldSet l = eval(f.left()), r = eval(f.right());
        return all_ & ~(l ^ r);
      }
      case Formula::Kind::Box: {
        WorldSet sub = eval(f.child());
        WorldSet out = 0;
        for (int w = 0; w < model_.frame.size(); ++w)
          if ((model_.frame.successors(w) & ~sub) == 0) out |= world_bit(w);
        return out;
      }
      case Formula::Kind::Diamond: {
        WorldSet sub = eval(f.child());
        WorldSet out = 0;
        for (int w = 0; w < model_.frame.size(); ++w)
          if (model_.frame.successors(w) & sub) out |= world_bit(w);
        return out;
      }
    }
    throw std::logic_error("unreachable");
  }

  const Model& model_;
  WorldSet all_;
  std::unordered_map<const Formula::Node*, WorldSet> cache_;
};

} // namespace

WorldSet extension(const Model& m, const Formula& f) {
  return Evaluator(m).eval(f);
}

bool satisfies(const PointedModel& p, const Formula& f) {
  if (p.point < 0 || p.point >= p.model.frame.size())
    throw std::invalid_argument("designated world out of range");
  return (extension(p.model, f) >> p.point) & 1;
}

std::optional<Countermodel> find_frame_countermodel(
    const Frame& frame, const Formula& f, std::uint64_t valuation_cap) {
  std::vector<std::string> vars = variables(f);
  int k = static_cast<int>(vars.size());
  int n = frame.size();
  if (k * n >= 63)
    throw ResourceLimitError("valuation sweep too large");
  std::uint64_t total = std::uint64_t{1} << (k * n);
  if (total > valuation_cap)
    throw ResourceLimitError("valuation sweep exceeds cap");

  Model m{frame, {}};
  for (const auto& v : vars) m.valuation.emplace(v, 0);
  WorldSet all = frame.worlds();
  for (std::uint64_t val = 0; val < total; ++val) {
    int shift = 0;
    for (const auto& v : vars) {
      m.valuation[v] = (val >> shift) & all;
      shift += n;
    }
    WorldSet failing = all & ~extension(m, f);
    if (failing) return Countermodel{m, first_world(failing)};
  }
  return std::nullopt;
}

bool frame_valid(const Frame& frame, const Formula& f,
                 std::uint64_t valuation_cap) {
  return !find_frame_countermodel(frame, f, valuation_cap).has_value();
}

ClassSweepReport class_valid_upto(FrameClass c, const Formula& f, int nmax,
                                  std::size_t frame_cap,
                                  std::uint64_t valuation_cap) {
  if (nmax < 1) throw std::invalid_argument("nmax must be at least 1");
  ClassSweepReport report;
  for (int n = 1; n <= nmax; ++n) {
    report.bound = n;
    for (const Frame& frame :
         enumerate_frames(c, n, /*up_to_iso=*/true, frame_cap)) {
      ++report.frames_examined;
      if (auto cm = find_frame_countermodel(frame, f, valuation_cap)) {
        report.countermodel = std::move(cm);
        return report;
      }
    }
  }
  return report;
}

} // namespace grz
