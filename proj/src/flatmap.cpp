#include "singfold/flatmap.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "singfold/parallel.hpp"

namespace singfold {

namespace {

QPoly P(const std::string& s) { return parse_polynomial(s); }

struct CaseFlatData {
  FlatChart chart;
  BaseChange change;
};

void set_chart(FlatChart& c, std::vector<std::string> xi, const std::vector<std::string>& embedding,
               std::vector<std::string> slots, std::vector<int> degrees, const std::vector<std::string>& psi,
               const std::vector<std::pair<std::string, std::string>>& relations) {
  c.xi_symbols = std::move(xi);
  for (const auto& e : embedding) c.embedding.push_back(P(e));
  c.slots = std::move(slots);
  c.degrees = std::move(degrees);
  for (const auto& p : psi) c.psi.push_back(P(p));
  c.formulas_available = !psi.empty();
  for (const auto& [s, r] : relations) c.relations.push_back({s, P(r)});
  for (std::size_t i = 0; i < c.slots.size(); ++i) {
    bool fixed = std::any_of(c.relations.begin(), c.relations.end(),
                             [&](const FlatRelation& r) { return r.slot == c.slots[i]; });
    if (c.formulas_available && c.psi[i].is_zero()) fixed = true;
    if (!fixed) c.free_slots.push_back(c.slots[i]);
  }
}

void set_change(BaseChange& b, std::vector<std::string> params, const std::vector<std::string>& forward,
                const std::vector<std::string>& inverse) {
  b.parameters = std::move(params);
  for (const auto& f : forward) b.forward.push_back(P(f));
  for (const auto& g : inverse) b.inverse.push_back(P(g));
}

CaseFlatData make_d4() {
  CaseFlatData d;
  set_chart(d.chart, {"xi1", "xi2"}, {"xi1", "xi2", "0", "0"}, {"psi2", "psi4", "psi6", "psi"}, {2, 4, 6, 4},
            {"xi1^2 + xi2^2", "-1/4*(xi1^2 - xi2^2)^2",
             "-1/6*(xi1^2 + xi2^2)*xi1^2*xi2^2 + 7/216*(xi1^2 + xi2^2)^3", "0"},
            {{"psi6", "-1/108*psi2^3 - 1/6*psi2*psi4"}});
  set_change(d.change, {"t2", "t4"}, {"t2", "t4 - t2^2/8", "5/432*t2^3 - 1/6*t2*t4", "0"},
             {"psi2", "psi4 + 1/8*psi2^2"});
  return d;
}

CaseFlatData make_d5() {
  CaseFlatData d;
  const std::string s1 = "(xi1^2 + xi2^2 + xi3^2)", s2 = "(xi1^2*xi2^2 + xi1^2*xi3^2 + xi2^2*xi3^2)",
                    s3 = "xi1^2*xi2^2*xi3^2";
  set_chart(d.chart, {"xi1", "xi2", "xi3"}, {"xi1", "xi2", "xi3", "0", "0"},
            {"psi2", "psi4", "psi6", "psi8", "psi"}, {2, 4, 6, 8, 5},
            {s1, s2 + " - 5/16*" + s1 + "^2",
             s3 + " - 3/8*" + s1 + "*" + s2 + " + 11/128*" + s1 + "^3",
             "-1/8*" + s1 + "*" + s3 + " - 1/16*" + s2 + "^2 + 9/128*" + s2 + "*" + s1 + "^2 - 51/4096*" + s1 + "^4",
             "0"},
            {{"psi8", "-1/2048*psi2^4 - 1/8*psi2*psi6 - 1/64*psi2^2*psi4 - 1/16*psi4^2"}});
  set_change(d.change, {"t2", "t4", "t6"},
             {"t2", "t4 - 1/16*t2^2", "t6 - 5/24*t2*t4 + 5/3456*t2^3",
              "7/110592*t2^4 - 1/8*t2*t6 + 7/384*t2^2*t4 - 1/16*t4^2", "0"},
             {"psi2", "psi4 + 1/16*psi2^2", "psi6 + 5/24*psi2*psi4 + 5/432*psi2^3"});
  return d;
}

CaseFlatData make_d6() {
  CaseFlatData d;
  set_chart(
      d.chart, {"xi1", "xi3", "xi5"}, {"xi1", "xi1", "xi3", "xi3", "xi5", "xi5"},
      {"psi2", "psi4", "psi6", "psi8", "psi10", "psi"}, {2, 4, 6, 8, 10, 6},
      {"2*(xi1^2 + xi3^2 + xi5^2)",
       "-2/5*xi1^4 - 2/5*xi3^4 - 2/5*xi5^4 + 6/5*xi1^2*xi3^2 + 6/5*xi1^2*xi5^2 + 6/5*xi3^2*xi5^2",
       "2*xi1^2*xi3^2*xi5^2",
       "4/125*xi1^8 + 4/125*xi3^8 + 4/125*xi5^8 - 14/125*xi1^6*xi3^2 - 14/125*xi1^6*xi5^2 - 14/125*xi1^2*xi3^6"
       " - 14/125*xi1^2*xi5^6 - 14/125*xi3^6*xi5^2 - 14/125*xi3^2*xi5^6 + 14/125*xi1^4*xi3^4 + 14/125*xi1^4*xi5^4"
       " + 14/125*xi3^4*xi5^4 + 98/125*xi1^4*xi3^2*xi5^2 + 98/125*xi1^2*xi3^2*xi5^4 + 98/125*xi1^2*xi3^4*xi5^2",
       "-108/625*xi1^2*xi3^2*xi5^6 - 108/625*xi1^6*xi3^2*xi5^2 - 108/625*xi1^2*xi3^6*xi5^2 - 22/3125*xi1^10"
       " - 22/3125*xi3^10 - 22/3125*xi5^10 - 24/625*xi1^6*xi3^4 - 24/625*xi1^6*xi5^4 - 24/625*xi1^4*xi3^6"
       " - 24/625*xi1^4*xi5^6 - 24/625*xi3^6*xi5^4 - 24/625*xi3^4*xi5^6 + 18/625*xi1^8*xi3^2 + 18/625*xi1^8*xi5^2"
       " + 18/625*xi1^2*xi3^8 + 18/625*xi1^2*xi5^8 + 18/625*xi3^8*xi5^2 + 18/625*xi3^2*xi5^8"
       " + 648/625*xi1^4*xi3^2*xi5^4 + 648/625*xi1^2*xi3^4*xi5^4 + 648/625*xi1^4*xi3^4*xi5^2",
       "xi1^2*xi3^2*xi5^2"},
      {{"psi8", "1/5*psi2*psi6 - 1/100*psi2^2*psi4 + 1/10*psi4^2"},
       {"psi10", "-1/50000*psi2^5 + 1/50*psi2^2*psi6 - 1/50*psi2*psi4^2 + 2/5*psi4*psi6"},
       {"psi", "1/2*psi6"}});
  set_change(d.change, {"t2", "t4", "t6"},
             {"t2", "1/2*t4 + 1/40*t2^2", "1/4*t6 + 1/24*t2*t4 + 1/432*t2^3",
              "1/20*t2*t6 + 7/1200*t2^2*t4 + 119/432000*t2^4 + 1/40*t4^2",
              "133/3600000*t2^5 + 3/400*t2^2*t6 + 131/108000*t2^3*t4 + 1/300*t2*t4^2 + 1/20*t4*t6",
              "1/8*t6 + 1/48*t2*t4 + 1/864*t2^3"},
             {"psi2", "2*psi4 - 1/20*psi2^2", "4*psi6 - 1/3*psi2*psi4 - 1/1080*psi2^3"});
  return d;
}

CaseFlatData make_e6() {
  CaseFlatData d;
  set_chart(d.chart, {"xi2", "xi4"}, {"0", "xi2", "0", "xi4", "0", "0"},
            {"psi2", "psi5", "psi6", "psi8", "psi9", "psi12"}, {2, 5, 6, 8, 9, 12},
            {"2*xi2^2 + 6*xi2*xi4 + 6*xi4^2", "0",
             "-xi2^6 - 9*xi2^5*xi4 - 30*xi2^4*xi4^2 - 45*xi2^3*xi4^3 - 30*xi2^2*xi4^4 - 9*xi2*xi4^5 - 3*xi4^6",
             "1/12*(xi2^2 + 3*xi2*xi4 + 3*xi4^2)*(5*xi2^6 + 45*xi2^5*xi4 + 144*xi2^4*xi4^2 + 189*xi2^3*xi4^3"
             " + 72*xi2^2*xi4^4 - 27*xi2*xi4^5 - 9*xi4^6)",
             "0",
             "693/4*xi2^2*xi4^10 + 189/2*xi2*xi4^11 - 2277/2*xi2^5*xi4^7 - 1947/2*xi2^7*xi4^5 - 9/2*xi2^11*xi4"
             " - 143/4*xi2^10*xi4^2 - 165*xi2^9*xi4^3 - 1089/2*xi2^4*xi4^8 - 5225/4*xi2^6*xi4^6 + 63/4*xi4^12"
             " - 1/4*xi2^12 - 979/2*xi2^8*xi4^4"},
            {{"psi8", "-1/192*psi2^4 - 1/4*psi2*psi6"},
             {"psi12", "1/1536*psi2^6 - 1/8*psi6^2 + 1/48*psi2^3*psi6"}});
  set_change(d.change, {"t2", "t6"},
             {"t2", "0", "-6*t6 - 5/72*t2^3", "7/576*t2^4 + 3/2*t2*t6", "0",
              "-29/20736*t2^6 - 9/2*t6^2 - 11/48*t6*t2^3"},
             {"psi2", "-1/6*psi6 - 5/432*psi2^3"});
  return d;
}

const std::vector<std::string> kE7Slots = {"psi2", "psi6", "psi8", "psi10", "psi12", "psi14", "psi18"};
const std::vector<int> kE7Degrees = {2, 6, 8, 10, 12, 14, 18};

CaseFlatData make_e7_s3() {
  CaseFlatData d;
  set_chart(
      d.chart, {"xi3", "xi5"}, {"0", "0", "xi3", "xi3", "xi5", "xi5", "-xi3 - xi5", "xi3 + xi5"}, kE7Slots,
      kE7Degrees,
      {"2/5*(xi3^2 + xi3*xi5 + xi5^2)",
       "32176/225*xi3^6 + 32176/75*xi3^5*xi5 + 53552/75*xi3^4*xi5^2 + 160432/225*xi3^3*xi5^3"
       " + 53552/75*xi3^2*xi5^4 + 32176/75*xi3*xi5^5 + 32176/225*xi5^6",
       "16/30375*(xi3^2 + xi3*xi5 + xi5^2)*(550819*xi3^6 + 1652457*xi3^5*xi5 + 1389264*xi3^4*xi5^2"
       " + 24433*xi3^3*xi5^3 + 1389264*xi3^2*xi5^4 + 1652457*xi3*xi5^5 + 550819*xi5^6)",
       "96/109375*(20743*xi3^6 + 62229*xi3^5*xi5 + 41208*xi3^4*xi5^2 - 21299*xi3^3*xi5^3 + 41208*xi3^2*xi5^4"
       " + 62229*xi3*xi5^5 + 20743*xi5^6)*(xi3^2 + xi3*xi5 + xi5^2)^2",
       "-42062501701/398671875*xi3^8*xi5^4 - 4423023418/102515625*xi3^9*xi5^3"
       " - 62899959716/5980078125*xi3^10*xi5^2 - 347826674932/1993359375*xi3^7*xi5^5"
       " - 3081278138/17940234375*xi3^12 - 3081278138/17940234375*xi5^12"
       " - 175228928248/854296875*xi3^6*xi5^6 - 6162556276/5980078125*xi3^11*xi5"
       " - 347826674932/1993359375*xi3^5*xi5^7 - 42062501701/398671875*xi3^4*xi5^8"
       " - 4423023418/102515625*xi3^3*xi5^9 - 62899959716/5980078125*xi3^2*xi5^10"
       " - 6162556276/5980078125*xi3*xi5^11",
       "-4/30903847734375*(xi3^2 + xi3*xi5 + xi5^2)*(1511960253367*xi3^12 + 9071761520202*xi3^11*xi5"
       " + 67786465629432*xi3^10*xi5^2 + 255774514211975*xi3^9*xi5^3 + 617323843488330*xi3^8*xi5^4"
       " + 1034437665403692*xi3^7*xi5^5 + 1226835303782847*xi3^6*xi5^6 + 1034437665403692*xi3^5*xi5^7"
       " + 617323843488330*xi3^4*xi5^8 + 255774514211975*xi3^3*xi5^9 + 67786465629432*xi3^2*xi5^10"
       " + 9071761520202*xi3*xi5^11 + 1511960253367*xi5^12)",
       "-49900582548245699977888/128185297421220703125*xi3^18"
       " - 49900582548245699977888/128185297421220703125*xi5^18"
       " - 1808994581776446325173376/42728432473740234375*xi3^3*xi5^15"
       " - 43351951625476282697248/2848562164916015625*xi3^2*xi5^16"
       " - 49900582548245699977888/14242810824580078125*xi3*xi5^17"
       " - 49900582548245699977888/14242810824580078125*xi3^17*xi5"
       " - 43351951625476282697248/2848562164916015625*xi3^16*xi5^2"
       " - 1808994581776446325173376/42728432473740234375*xi3^15*xi5^3"
       " - 1224969840491929611874048/14242810824580078125*xi3^14*xi5^4"
       " - 283014291225008940645632/2034687260654296875*xi3^13*xi5^5"
       " - 8202907266598286263520384/42728432473740234375*xi3^12*xi5^6"
       " - 3383893531113795266600128/14242810824580078125*xi3^11*xi5^7"
       " - 349873020975151098628384/1294800984052734375*xi3^10*xi5^8"
       " - 3288297534494448854110112/11653208856474609375*xi3^9*xi5^9"
       " - 349873020975151098628384/1294800984052734375*xi3^8*xi5^10"
       " - 3383893531113795266600128/14242810824580078125*xi3^7*xi5^11"
       " - 8202907266598286263520384/42728432473740234375*xi3^6*xi5^12"
       " - 283014291225008940645632/2034687260654296875*xi3^5*xi5^13"
       " - 1224969840491929611874048/14242810824580078125*xi3^4*xi5^14"},
      {{"psi8", "-2252645/81*psi2^4 + 473/27*psi2*psi6"},
       {"psi10", "-557383/105*psi2^5 + 111/35*psi2^2*psi6"},
       {"psi12", "-43251895481/24494400*psi2^6 + 1079173/1360800*psi2^3*psi6 - 1/103680*psi6^2"},
       {"psi14",
        "-573683065303/145496736*psi2^7 + 10112840293/4688228160*psi2^4*psi6 - 17821/89299584*psi2*psi6^2"},
       {"psi18",
        "-15896711538141155833/4023348492240*psi2^9 + 391876556269181513/64820614597200*psi2^6*psi6"
        " - 7868764351687/3601145255400*psi2^3*psi6^2 - 5/419904*psi6^3"}});
  set_change(
      d.change, {"t2", "t6"},
      {"t2", "18610/9*t2^3 + 18000*t6", "2044595/243*t2^4 + 946000/3*t2*t6",
       "6247/5*t2^5 + 399600/7*t2^2*t6", "-877545367/5248800*t2^6 + 30746815/2268*t2^3*t6 - 3125*t6^2",
       "-4251411945217/12658216032*t2^7 + 42570028475/1775844*t2^4*t6 - 556906250/8613*t2*t6^2",
       "-134750219913739937987/150013422353520*t2^9 - 277874830706221330/4910652621*t2^6*t6"
       " - 488086012279345000/666878751*t2^3*t6^2 - 625000000/9*t6^3"},
      {"psi2", "1/18000*psi6 - 1861/16200*psi2^3"});
  return d;
}

CaseFlatData make_e7_f4() {
  CaseFlatData d;
  set_chart(d.chart, {"xi1", "xi3", "xi5", "xi7"}, {"xi1", "-xi1", "xi3", "xi3", "xi5", "xi5", "xi7", "-xi7"},
            kE7Slots, kE7Degrees, {},
            {{"psi10", "82928/45*psi2^5 - 4/3*psi2^2*psi6 + 9/35*psi2*psi8"},
             {"psi14",
              "-12190772504/2219805*psi2^7 + 7281979/1522152*psi2^4*psi6 - 471547/789264*psi2^3*psi8"
              " + 3779/6765120*psi2*psi6^2 + 73490/8613*psi12*psi2 - 1/25920*psi6*psi8"},
             {"psi18",
              "-1271044247268145576/94705443405*psi2^9 + 256749355304/25982289*psi2^6*psi6"
              " - 12475637391961/9093801150*psi2^5*psi8 + 6360724111/3117874680*psi2^3*psi6^2"
              " + 470160383920/31756131*psi12*psi2^3 - 5935967/41810580*psi2^2*psi6*psi8"
              " - 101699/30970800*psi2*psi8^2 - 1/52488*psi6^3 - 20/27*psi12*psi6"}});
  set_change(
      d.change, {"t2", "t6", "t8", "t12"},
      {"t2", "16735/9*t2^3 - 3000*t6", "4884005/972*t2^4 - 360500/9*t2*t6 + 50000*t8",
       "13113/20*t2^5 - 6300*t2^2*t6 + 90000/7*t2*t8",
       "-1533855367/5248800*t2^6 - 5865805/7776*t2^3*t6 + 2927375/504*t2^2*t8 - 34375/72*t6^2 - 3125*t12",
       "-4794135161101/9205975296*t2^7 + 2226935425/6088608*t2^4*t6 + 4765011875/295974*t2^3*t8"
       " - 103796875/28188*t2*t6^2 - 229656250/8613*t2*t12 + 156250/27*t6*t8",
       "53845033157553005/8418261636*t2^6*t6 - 2973773239515500/545628069*t2^5*t8"
       " - 2028480753289375/155893734*t2^3*t6^2 - 3997692756437500/95268393*t2^3*t12"
       " - 635618750000/77427*t2*t8^2 - 62500000/9*t12*t6 + 32999899562500/696843*t2^2*t6*t8"
       " - 74647399081995101197/218201341605120*t2^9 - 132812500/243*t6^3"},
      {"psi2", "3347/5400*psi2^3 - 1/3000*psi6", "1/50000*psi8 + 1283191/3240000*psi2^4 - 721/2700000*psi2*psi6",
       "18995770783/43740000000*psi2^6 - 342859/972000000*psi2^3*psi6 + 23419/630000000*psi2^2*psi8"
       " - 11/648000000*psi6^2 - 1/3125*psi12"});
  return d;
}

const CaseFlatData& data(const std::string& case_id) {
  static const std::map<std::string, CaseFlatData> all = [] {
    std::map<std::string, CaseFlatData> m;
    const std::pair<const char*, CaseFlatData (*)()> makers[] = {
        {"A3B2D4", make_d4}, {"A5B3D5", make_d5},    {"D4C3D6", make_d6},
        {"D4G2E6", make_e6}, {"D4G2E7", make_e7_s3}, {"E6F4E7", make_e7_f4}};
    for (const auto& [id, make] : makers) {
      CaseFlatData d = make();
      d.chart.case_id = id;
      d.change.case_id = id;
      m.emplace(id, std::move(d));
    }
    return m;
  }();
  auto it = all.find(case_id);
  if (it == all.end()) throw std::invalid_argument("unknown case id: " + case_id);
  return it->second;
}

std::map<std::string, QPoly> slot_values(const FlatChart& c) {
  std::map<std::string, QPoly> m;
  for (std::size_t i = 0; i < c.slots.size(); ++i) m[c.slots[i]] = c.psi[i];
  return m;
}

// slot values on the chart image: free slots stay symbolic, fixed slots follow the relations
std::map<std::string, QPoly> symbolic_slots(const FlatChart& c) {
  std::map<std::string, QPoly> m;
  for (const auto& s : c.free_slots) m[s] = var(s);
  for (std::size_t i = 0; i < c.slots.size(); ++i)
    if (c.formulas_available && c.psi[i].is_zero()) m[c.slots[i]] = QPoly();
  for (const auto& r : c.relations) m[r.slot] = r.rhs.substitute(m);
  return m;
}

}  // namespace

const FlatChart& flat_chart(const std::string& case_id) { return data(case_id).chart; }
const BaseChange& base_change(const std::string& case_id) { return data(case_id).change; }

CheckReport verify_flat_relations(const std::string& case_id) {
  const FlatChart& c = flat_chart(case_id);
  CheckReport r;
  if (c.formulas_available) {
    auto values = slot_values(c);
    for (std::size_t i = 0; i < c.slots.size(); ++i) {
      std::map<std::string, int> w;
      for (const auto& x : c.xi_symbols) w[x] = 1;
      bool homogeneous = c.psi[i].is_zero() || c.psi[i].weighted_part(w, c.degrees[i]) == c.psi[i];
      r.add(c.slots[i] + " homogeneous of degree " + std::to_string(c.degrees[i]), homogeneous);
    }
    for (const auto& rel : c.relations) {
      QPoly residual = values.at(rel.slot) - rel.rhs.substitute(values);
      r.add(rel.slot + " relation vanishes on the chart", residual.is_zero(),
            residual.is_zero() ? std::string() : "residual has " + std::to_string(residual.terms().size()) + " terms");
    }
  } else {
    // formulas withheld: test the relations on the image of the base change
    const BaseChange& b = base_change(case_id);
    std::map<std::string, QPoly> image;
    for (std::size_t i = 0; i < c.slots.size(); ++i) image[c.slots[i]] = b.forward[i];
    for (const auto& rel : c.relations) {
      QPoly residual = image.at(rel.slot) - rel.rhs.substitute(image);
      r.add(rel.slot + " relation holds on the image of f", residual.is_zero(),
            residual.is_zero() ? std::string() : "residual has " + std::to_string(residual.terms().size()) + " terms");
    }
  }
  return r;
}

CheckReport verify_iso(const std::string& case_id) {
  const FlatChart& c = flat_chart(case_id);
  const BaseChange& b = base_change(case_id);
  CheckReport r;
  std::map<std::string, QPoly> forward;
  for (std::size_t i = 0; i < c.slots.size(); ++i) forward[c.slots[i]] = b.forward[i];
  for (std::size_t i = 0; i < b.parameters.size(); ++i) {
    QPoly residual = b.inverse[i].substitute(forward) - var(b.parameters[i]);
    r.add("(a) g(f(t)) = t in " + b.parameters[i], residual.is_zero(), residual.is_zero() ? "" : residual.to_string());
  }
  auto values = c.formulas_available ? slot_values(c) : symbolic_slots(c);
  std::map<std::string, QPoly> t_of_psi;
  for (std::size_t i = 0; i < b.parameters.size(); ++i)
    t_of_psi[b.parameters[i]] = b.inverse[i].substitute(values);
  for (std::size_t i = 0; i < c.slots.size(); ++i) {
    QPoly residual = b.forward[i].substitute(t_of_psi) - values.at(c.slots[i]);
    r.add("(b) f(g(psi)) = psi in " + c.slots[i], residual.is_zero(),
          residual.is_zero() ? std::string() : "residual has " + std::to_string(residual.terms().size()) + " terms");
  }
  return r;
}

std::vector<Rational> chart_coordinates(const std::string& case_id, const std::vector<Rational>& h) {
  const FlatChart& c = flat_chart(case_id);
  if (h.size() != c.embedding.size())
    throw std::invalid_argument("point has dimension " + std::to_string(h.size()) + ", expected " +
                                std::to_string(c.embedding.size()));
  const RootSystem phi = build_root_system(case_meta(case_id).quotient_type);
  for (const auto& a : theta_roots(case_meta(case_id), phi))
    if (sgn(pairing(a, h)) != 0) throw std::invalid_argument("point violates the hyperplane of " + root_to_string(a));
  // h_i = sum_j c_ij xi_j
  const std::size_t n = c.xi_symbols.size();
  Matrix<Rational> m;
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::vector<Rational> row(n + 1);
    QPoly e = c.embedding[i].with_variables(c.xi_symbols);
    for (std::size_t j = 0; j < n; ++j) row[j] = e.differentiate(c.xi_symbols[j]).constant_term();
    row[n] = h[i];
    m.push_back(row);
  }
  auto rr = rref(m);
  if (!rr.pivots.empty() && rr.pivots.back() == static_cast<int>(n))
    throw std::invalid_argument("point is not in the chart");
  if (rr.rank < static_cast<int>(n)) throw std::logic_error("chart embedding is degenerate");
  std::vector<Rational> xi(n);
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) xi[rr.pivots[i]] = rr.matrix[i][n];
  return xi;
}

std::vector<Rational> pi_prime(const std::string& case_id, const std::vector<Rational>& h) {
  const FlatChart& c = flat_chart(case_id);
  if (!c.formulas_available) throw std::runtime_error("restricted flat coordinates are not available for " + case_id);
  auto xi = chart_coordinates(case_id, h);
  std::map<std::string, QPoly> at;
  for (std::size_t j = 0; j < xi.size(); ++j) at[c.xi_symbols[j]] = QPoly(xi[j]);
  std::vector<Rational> psi;
  for (const auto& f : c.psi) psi.push_back(f.substitute(at).constant_term());
  return psi;
}

ParamPoint inverse_point(const std::string& case_id, const std::vector<Rational>& psi) {
  const FlatChart& c = flat_chart(case_id);
  const BaseChange& b = base_change(case_id);
  if (psi.size() != c.slots.size()) throw std::invalid_argument("psi vector has the wrong length");
  std::map<std::string, QPoly> at;
  for (std::size_t i = 0; i < psi.size(); ++i) at[c.slots[i]] = QPoly(psi[i]);
  ParamPoint t;
  for (std::size_t i = 0; i < b.parameters.size(); ++i)
    t[b.parameters[i]] = b.inverse[i].substitute(at).constant_term();
  return t;
}

std::vector<Rational> forward_point(const std::string& case_id, const ParamPoint& t) {
  const BaseChange& b = base_change(case_id);
  std::vector<Rational> out;
  for (const auto& f : b.forward) out.push_back(specialise(f, t).constant_term());
  return out;
}

bool CorrespondenceReport::ok() const {
  return !entries.empty() && distinct_types == expected_distinct_types &&
         std::all_of(entries.begin(), entries.end(), [](const CorrespondenceEntry& e) { return e.match; });
}

CorrespondenceReport correspondence_check(const std::string& case_id, int samples, std::uint64_t seed) {
  const CaseDescriptor& d = descriptor(case_id);
  const FlatChart& chart = flat_chart(case_id);
  const RootSystem phi = build_root_system(d.meta.quotient_type);
  auto subsystems = enumerate_subsystems(phi, theta_roots(d.meta, phi));

  CorrespondenceReport report;
  report.case_id = case_id;
  report.witness_route_available = chart.formulas_available;
  report.expected_distinct_types = static_cast<int>(d.strata.size());
  std::set<TypeMultiset> types;
  for (const auto& s : subsystems) types.insert(s.type);
  report.distinct_types = static_cast<int>(types.size());

  auto expected_stratum = [&](const TypeMultiset& type) -> std::string {
    for (const auto& s : d.strata)
      if (s.quotient_type == type) return s.id;
    return {};
  };

  // stratum route: one sampled batch per type
  std::map<TypeMultiset, std::vector<CorrespondenceEntry>> by_type;
  if (!chart.formulas_available) {
    std::vector<TypeMultiset> list(types.begin(), types.end());
    std::vector<std::vector<CorrespondenceEntry>> results(list.size());
    parallel_for(list.size(), [&](std::size_t k) {
      const std::string sid = expected_stratum(list[k]);
      if (sid.empty()) {
        CorrespondenceEntry e;
        e.error = "no stratum carries type " + list[k].to_string();
        results[k].push_back(e);
        return;
      }
      for (const auto& t : sample_stratum(case_id, sid, samples, seed)) {
        CorrespondenceEntry e;
        e.t = t;
        e.stratum = stratum_membership(case_id, t);
        e.configuration = fiber_configuration(quotient_at(d, t), d.quotient_variables).type;
        results[k].push_back(e);
      }
    });
    for (std::size_t k = 0; k < list.size(); ++k) by_type[list[k]] = results[k];
  }

  report.entries.resize(subsystems.size());
  parallel_for(subsystems.size(), [&](std::size_t i) {
    const SubRootSystem& s = subsystems[i];
    CorrespondenceEntry& e = report.entries[i];
    e.index = static_cast<int>(i);
    e.type = s.type;
    e.simple = s.simple;
    e.witness = s.witness;
    e.expected_stratum = expected_stratum(s.type);
    try {
      if (chart.formulas_available) {
        e.route = "witness";
        e.xi = chart_coordinates(case_id, s.witness);
        e.psi = pi_prime(case_id, s.witness);
        e.t = inverse_point(case_id, e.psi);
        e.stratum = stratum_membership(case_id, e.t);
        e.configuration = fiber_configuration(quotient_at(d, e.t), d.quotient_variables).type;
        e.match = e.configuration == s.type && e.stratum == e.expected_stratum;
      } else {
        e.route = "stratum";
        const auto& batch = by_type.at(s.type);
        e.match = !batch.empty();
        for (const auto& b : batch) {
          if (!b.error.empty()) e.error = b.error;
          if (!b.error.empty() || b.configuration != s.type || b.stratum != e.expected_stratum) e.match = false;
        }
        if (!batch.empty()) {
          e.t = batch.front().t;
          e.stratum = batch.front().stratum;
          e.configuration = batch.front().configuration;
        }
      }
    } catch (const std::exception& ex) {
      e.error = ex.what();
      e.match = false;
    }
  });
  return report;
}

}  // namespace singfold
