#include "tga/controller_io.hpp"

#include <json.hpp>

namespace tga {

using nlohmann::ordered_json;

std::string encoding_name(Encoding e) { return e == Encoding::Tick ? "tick" : "predicates"; }

namespace {

// Clock names for region text: model clocks plus "z" for the wrap clock.
TimedGameModel naming_model(const TimedGameModel& m, const Controller& c) {
  TimedGameModel n = m;
  n.clocks = c.clocks;
  return n;
}

ordered_json region_json(const Region& r, const TimedGameModel& names) {
  ordered_json j;
  j["loc"] = names.location(r.loc).name;
  ordered_json h = ordered_json::array(), cls = ordered_json::array();
  for (std::size_t x = 0; x < r.n; ++x) {
    h.push_back(r.h[x]);
    cls.push_back(r.cls[x]);
  }
  j["h"] = h;
  j["cls"] = cls;
  j["text"] = to_string(r, names);
  return j;
}

Region region_from(const ordered_json& j, const TimedGameModel& names, std::size_t n) {
  auto loc = names.find_location(j.at("loc").get<std::string>());
  if (!loc) throw ControllerFormatError("unknown location " + j.at("loc").get<std::string>());
  const auto& h = j.at("h");
  const auto& cls = j.at("cls");
  if (h.size() != n || cls.size() != n) throw ControllerFormatError("region has the wrong number of clocks");
  Region r;
  r.loc = *loc;
  r.n = static_cast<std::uint8_t>(n);
  int blocks = 0;
  for (std::size_t x = 0; x < n; ++x) {
    const int hx = h[x].get<int>();
    const int cx = cls[x].get<int>();
    if (hx < 0 || hx > 65535 || cx < -1 || cx > static_cast<int>(n))
      throw ControllerFormatError("region entry out of range");
    r.h[x] = static_cast<std::uint16_t>(hx);
    r.cls[x] = static_cast<std::int8_t>(cx);
    blocks = std::max(blocks, cx);
  }
  r.blocks = static_cast<std::uint8_t>(blocks);
  if (!(normalize(r) == r)) throw ControllerFormatError("region is not in normal form");
  if (j.contains("text") && j.at("text").get<std::string>() != to_string(r, names))
    throw ControllerFormatError("region text does not match its fields: " + j.at("text").get<std::string>());
  return r;
}

std::optional<ActionId> action_from(const ordered_json& j, const TimedGameModel& m) {
  if (j.is_null()) return std::nullopt;
  auto a = m.find_action(j.get<std::string>());
  if (!a || m.action(*a).owner != Player::One) throw ControllerFormatError("unknown player-1 action " + j.dump());
  return a;
}

}  // namespace

std::string serialize_controller(const Controller& c, const TimedGameModel& m) {
  const TimedGameModel names = naming_model(m, c);
  ordered_json j;
  j["format"] = "tga-controller/1";
  j["game"] = c.game;
  j["objective"] = c.objective;
  j["encoding"] = encoding_name(c.encoding);
  j["clocks"] = c.clocks;
  j["memory_states"] = c.memory_states;
  j["initial_memory"] = c.initial_memory;
  j["predicate_bits"] = c.predicate_bits();
  j["policy"] = policy_name(c.policy);
  j["observation_note"] =
      "observations carry predicates computed from the whole transition, so the controller sees the flow of time";
  ordered_json obs = ordered_json::array();
  for (std::size_t i = 0; i < c.observations.size(); ++i) {
    const EnlargedRegion& e = c.observations[i];
    ordered_json o;
    o["id"] = i;
    o["region"] = region_json(e.base, names);
    o["bl1"] = e.pred.bl1;
    o["vpos"] = e.pred.vpos;
    o["vge1"] = e.pred.vge1;
    o["vstar"] = e.pred.vstar;
    o["tick"] = e.tick;
    obs.push_back(o);
  }
  j["observations"] = obs;
  ordered_json upd = ordered_json::array(), pre = ordered_json::array();
  for (const auto& [key, entry] : c.table) {
    ordered_json u;
    u["memory"] = key.first;
    u["observation"] = key.second;
    u["next"] = entry.next_memory;
    upd.push_back(u);
    ordered_json p;
    p["memory"] = key.first;
    p["observation"] = key.second;
    p["target"] = region_json(entry.move.target, names);
    p["wrapped"] = entry.move.wrapped;
    p["action"] = entry.move.action ? ordered_json(m.action(*entry.move.action).name) : ordered_json(nullptr);
    p["policy"] = policy_name(c.policy);
    pre.push_back(p);
  }
  j["memory_update"] = upd;
  j["prescriptions"] = pre;
  return j.dump(2) + "\n";
}

Controller parse_controller(const std::string& text, const TimedGameModel& m) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ControllerFormatError(std::string("malformed controller file: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "tga-controller/1") throw ControllerFormatError("unsupported format");
    Controller c;
    c.game = j.at("game").get<std::string>();
    c.objective = j.at("objective").get<std::string>();
    const std::string enc = j.at("encoding").get<std::string>();
    if (enc != "tick" && enc != "predicates") throw ControllerFormatError("unknown encoding " + enc);
    c.encoding = enc == "tick" ? Encoding::Tick : Encoding::Predicates;
    c.clocks = j.at("clocks").get<std::vector<std::string>>();
    std::vector<std::string> expect = m.clocks;
    if (c.encoding == Encoding::Tick) expect.push_back("z");
    if (c.clocks != expect) throw ControllerFormatError("controller clocks do not match the model");
    c.memory_states = j.at("memory_states").get<int>();
    c.initial_memory = j.at("initial_memory").get<int>();
    if (c.memory_states < 1 || c.initial_memory < 0 || c.initial_memory >= c.memory_states)
      throw ControllerFormatError("bad memory declaration");
    auto pol = parse_policy(j.at("policy").get<std::string>());
    if (!pol) throw ControllerFormatError("unknown policy");
    c.policy = *pol;
    const TimedGameModel names = naming_model(m, c);
    const std::size_t n = c.clocks.size();
    for (const auto& o : j.at("observations")) {
      if (o.at("id").get<std::size_t>() != c.observations.size()) throw ControllerFormatError("observation ids out of order");
      EnlargedRegion e;
      e.base = region_from(o.at("region"), names, n);
      e.pred.bl1 = o.at("bl1").get<bool>();
      e.pred.vpos = o.at("vpos").get<std::uint8_t>();
      e.pred.vge1 = o.at("vge1").get<std::uint8_t>();
      e.pred.vstar = o.at("vstar").get<std::uint8_t>();
      e.tick = o.at("tick").get<bool>();
      if (!c.observations.empty() && !(c.observations.back() < e)) throw ControllerFormatError("observations not sorted");
      c.observations.push_back(e);
    }
    auto check_key = [&](int mem, int ob) {
      if (mem < 0 || mem >= c.memory_states || ob < 0 || ob >= static_cast<int>(c.observations.size()))
        throw ControllerFormatError("table key out of range");
    };
    std::map<std::pair<int, int>, int> next;
    for (const auto& u : j.at("memory_update")) {
      const int mem = u.at("memory").get<int>(), ob = u.at("observation").get<int>(), nx = u.at("next").get<int>();
      check_key(mem, ob);
      if (nx < 0 || nx >= c.memory_states) throw ControllerFormatError("memory update out of range");
      if (!next.emplace(std::make_pair(mem, ob), nx).second) throw ControllerFormatError("duplicate memory update");
    }
    for (const auto& p : j.at("prescriptions")) {
      const int mem = p.at("memory").get<int>(), ob = p.at("observation").get<int>();
      check_key(mem, ob);
      auto it = next.find({mem, ob});
      if (it == next.end()) throw ControllerFormatError("prescription without memory update");
      if (p.at("policy").get<std::string>() != policy_name(c.policy)) throw ControllerFormatError("mixed policies");
      ControllerEntry e;
      e.next_memory = it->second;
      e.move.target = region_from(p.at("target"), names, n);
      e.move.wrapped = p.at("wrapped").get<bool>();
      e.move.action = action_from(p.at("action"), m);
      if (!c.table.emplace(std::make_pair(mem, ob), e).second) throw ControllerFormatError("duplicate prescription");
    }
    if (c.table.size() != next.size()) throw ControllerFormatError("memory update without prescription");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ControllerFormatError(std::string("malformed controller file: ") + e.what());
  }
}

}  // namespace tga
