#include "oracles.hpp"

#include <algorithm>
#include <random>

namespace oracle {

namespace {

// Literal ordering relations over a fixed alphabet, evaluated from the
// raw traces into plain boolean tables.
struct Relations {
  std::vector<std::string> sigma;
  std::vector<std::vector<bool>> gt, aba;

  explicit Relations(const std::vector<Seq>& L) {
    std::set<std::string> s;
    for (const auto& t : L) s.insert(t.begin(), t.end());
    sigma.assign(s.begin(), s.end());
    const std::size_t n = sigma.size();
    gt.assign(n, std::vector<bool>(n, false));
    aba.assign(n, std::vector<bool>(n, false));
    auto id = [&](const std::string& x) {
      return static_cast<std::size_t>(std::lower_bound(sigma.begin(), sigma.end(), x) - sigma.begin());
    };
    for (const auto& t : L) {
      for (std::size_t i = 0; i + 1 < t.size(); ++i) gt[id(t[i])][id(t[i + 1])] = true;
      for (std::size_t i = 0; i + 2 < t.size(); ++i) {
        if (t[i] == t[i + 2]) aba[id(t[i])][id(t[i + 1])] = true;
      }
    }
  }

  bool tilde(std::size_t a, std::size_t b) const { return aba[a][b] && aba[b][a]; }
  bool arrow(std::size_t a, std::size_t b) const { return gt[a][b] && (!gt[b][a] || tilde(a, b)); }
  bool hash(std::size_t a, std::size_t b) const { return !gt[a][b] && !gt[b][a]; }
};

}  // namespace

std::map<StrPair, std::uint64_t> directly_follows(const std::vector<Seq>& traces) {
  std::map<StrPair, std::uint64_t> out;
  for (const auto& t : traces) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) ++out[{t[i], t[i + 1]}];
  }
  return out;
}

std::set<StrPair> mendacious_brute_force(const std::vector<Seq>& L) {
  const Relations r(L);
  const std::size_t n = r.sigma.size();
  auto artificial = [&](std::size_t i) {
    return r.sigma[i].rfind("S:", 0) == 0 || r.sigma[i].rfind("E:", 0) == 0;
  };
  std::set<StrPair> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (artificial(a) || artificial(b) || !r.arrow(a, b)) continue;
      bool found = false;
      for (std::size_t x = 0; x < n && !found; ++x) {
        if (!r.arrow(a, x) || !r.hash(x, b)) continue;
        for (std::size_t y = 0; y < n && !found; ++y) {
          found = r.arrow(y, b) && !r.gt[y][x] && r.hash(a, y);
        }
      }
      if (found) out.insert({r.sigma[a], r.sigma[b]});
    }
  }
  return out;
}

std::vector<Seq> augment(const std::vector<Seq>& traces) {
  std::vector<Seq> out;
  for (const auto& t : traces) {
    if (t.empty()) {
      out.push_back(t);
      continue;
    }
    Seq s{"S:" + t.front()};
    s.insert(s.end(), t.begin(), t.end());
    s.push_back("E:" + t.back());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Seq> sequences_of(const switchminer::EventLog& log) {
  std::vector<Seq> out;
  for (const auto& t : log.traces()) {
    Seq s;
    for (const auto& e : t.events) {
      switch (e.kind) {
        case switchminer::ArtificialKind::None: s.push_back(e.text); break;
        case switchminer::ArtificialKind::Start: s.push_back("S:" + e.text); break;
        case switchminer::ArtificialKind::End: s.push_back("E:" + e.text); break;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Seq> random_log(std::uint64_t seed, std::size_t max_activities, std::size_t max_traces,
                            std::size_t max_length) {
  std::mt19937_64 rng(seed);
  const std::size_t n_act = 2 + rng() % (max_activities - 1);
  const std::size_t n_traces = 1 + rng() % max_traces;
  std::vector<Seq> out;
  for (std::size_t i = 0; i < n_traces; ++i) {
    const std::size_t len = 1 + rng() % max_length;
    Seq t;
    for (std::size_t j = 0; j < len; ++j) t.push_back(std::string(1, static_cast<char>('A' + rng() % n_act)));
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Seq> random_spliced_log(std::uint64_t seed, std::size_t max_activities, std::size_t max_traces) {
  std::mt19937_64 rng(seed);
  const std::size_t n_act = 4 + rng() % (max_activities - 3);
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < n_act; ++i) letters.push_back(std::string(1, static_cast<char>('A' + i)));
  std::shuffle(letters.begin(), letters.end(), rng);
  const std::size_t n_base = 2 + rng() % 2;
  std::vector<Seq> base(n_base);
  for (std::size_t i = 0; i < letters.size(); ++i) base[i % n_base].push_back(letters[i]);
  std::vector<Seq> out(base.begin(), base.end());
  const std::size_t n_traces = n_base + rng() % (max_traces - n_base + 1);
  while (out.size() < n_traces) {
    const auto& p = base[rng() % n_base];
    const auto& q = base[rng() % n_base];
    const std::size_t cut_p = 1 + rng() % p.size();
    const std::size_t cut_q = rng() % q.size();
    Seq t(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(cut_p));
    t.insert(t.end(), q.begin() + static_cast<std::ptrdiff_t>(cut_q), q.end());
    out.push_back(std::move(t));
  }
  return out;
}

switchminer::SwitchProcessTree canonical(const switchminer::SwitchProcessTree& tree) {
  using switchminer::NodeKind;
  using switchminer::SwitchProcessTree;
  if (!tree.is_operator()) return tree;
  std::vector<SwitchProcessTree> kids;
  for (const auto& c : tree.children()) kids.push_back(canonical(c));
  if (tree.kind() == NodeKind::Xor || tree.kind() == NodeKind::Parallel) {
    std::sort(kids.begin(), kids.end(), [](const auto& a, const auto& b) {
      return switchminer::render_tree(a) < switchminer::render_tree(b);
    });
  }
  return SwitchProcessTree::op(tree.kind(), std::move(kids));
}

}  // namespace oracle
