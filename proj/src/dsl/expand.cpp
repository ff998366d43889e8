#include "imgql/dsl/expand.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>

#include "imgql/dsl/builtins.hpp"
#include "imgql/dsl/parser.hpp"

namespace imgql::dsl {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class ProgramLoader {
public:
  ProgramLoader(const Bindings& bindings, std::string stdlib_dir,
                EmbeddedLookup embedded)
      : bindings_(bindings), stdlib_dir_(std::move(stdlib_dir)),
        embedded_(std::move(embedded)) {}

  Program load_path(const std::string& path) {
    Program p;
    append_file(path, SourceLoc{path, 0, 0}, p, /*import_only=*/false);
    return p;
  }

  Program load_text(const std::string& text, const std::string& name) {
    Program p;
    seen_.insert("text:" + name);
    append_commands(parse_source(text, name), p, /*import_only=*/false);
    return p;
  }

private:
  void append_file(const std::string& spec, const SourceLoc& from, Program& p,
                   bool import_only) {
    std::string key, display, text;
    if (!resolve(spec, from, key, display, text)) {
      throw ScriptError(from, "cannot find script \"" + spec + "\"");
    }
    if (!seen_.insert(key).second) return;  // already imported
    append_commands(parse_source(text, display), p, import_only);
  }

  void append_commands(std::vector<Command> cmds, Program& p, bool import_only) {
    for (auto& cmd : cmds) {
      if (auto* imp = std::get_if<ImportCmd>(&cmd)) {
        const std::string target = substitute_vars(imp->path, bindings_, imp->loc);
        const std::string saved = current_dir_;
        append_file(target, imp->loc, p, /*import_only=*/true);
        current_dir_ = saved;
        continue;
      }
      if (import_only && !std::holds_alternative<LetDecl>(cmd)) {
        const SourceLoc loc = std::visit([](const auto& c) { return c.loc; }, cmd);
        throw ScriptError(loc, "imported files may only contain let and import commands");
      }
      p.commands.push_back(std::move(cmd));
    }
  }

  // Search order: importing file's directory, the stdlib directory, the
  // embedded corpus. Sets the canonical dedup key and loads the text.
  bool resolve(const std::string& spec, const SourceLoc& from, std::string& key,
               std::string& display, std::string& text) {
    std::vector<fs::path> candidates;
    const fs::path raw(spec);
    if (raw.is_absolute()) {
      candidates.push_back(raw);
    } else {
      if (!current_dir_.empty()) candidates.push_back(fs::path(current_dir_) / raw);
      candidates.push_back(raw);
      if (!stdlib_dir_.empty()) candidates.push_back(fs::path(stdlib_dir_) / raw);
    }
    for (const auto& c : candidates) {
      std::error_code ec;
      if (fs::is_regular_file(c, ec)) {
        key = fs::weakly_canonical(c, ec).string();
        if (ec) key = c.string();
        display = c.string();
        text = read_file(c);
        current_dir_ = c.parent_path().string();
        return true;
      }
    }
    if (embedded_) {
      if (const std::string* body = embedded_(spec)) {
        key = "embedded:" + spec;
        display = spec;
        text = *body;
        return true;
      }
    }
    (void)from;
    return false;
  }

  const Bindings& bindings_;
  std::string stdlib_dir_;
  EmbeddedLookup embedded_;
  std::string current_dir_;
  std::set<std::string> seen_;
};

// One link of the persistent declaration environment.
struct EnvEntry {
  enum class Kind { Let, Load, Arg };
  Kind kind = Kind::Let;
  std::string name;

  std::vector<std::string> params;  // Let
  ExprPtr body;                     // Let
  std::shared_ptr<const EnvEntry> decl_env;

  std::string path;  // Load
  Uid arg_uid = 0;   // Arg

  std::shared_ptr<const EnvEntry> prev;
};
using Env = std::shared_ptr<const EnvEntry>;

const EnvEntry* lookup(const Env& env, const std::string& name) {
  for (const EnvEntry* e = env.get(); e; e = e->prev.get()) {
    if (e->name == name) return e;
  }
  return nullptr;
}

class Expander {
public:
  Expander(const Bindings& bindings) : bindings_(bindings) {}

  Expansion run(const Program& program) {
    // The load commands are collected up front so unresolved names in
    // imported declarations can refer to images loaded later.
    for (const auto& cmd : program.commands) {
      if (const auto* load = std::get_if<LoadCmd>(&cmd)) {
        const std::string path = substitute_vars(load->path, bindings_, load->loc);
        loads_.push_back({load->name, path, load->loc});
        load_paths_[load->name] = path;
      }
    }

    Env env;
    for (const auto& cmd : program.commands) {
      if (const auto* let = std::get_if<LetDecl>(&cmd)) {
        auto e = std::make_shared<EnvEntry>();
        e->kind = EnvEntry::Kind::Let;
        e->name = let->name;
        e->params = let->params;
        e->body = let->body;
        e->decl_env = env;
        e->prev = env;
        env = std::move(e);
      } else if (const auto* load = std::get_if<LoadCmd>(&cmd)) {
        auto e = std::make_shared<EnvEntry>();
        e->kind = EnvEntry::Kind::Load;
        e->name = load->name;
        e->path = load_paths_[load->name];
        e->prev = env;
        env = std::move(e);
      } else if (const auto* save = std::get_if<SaveCmd>(&cmd)) {
        const std::string path = substitute_vars(save->path, bindings_, save->loc);
        const Uid uid = expand_expr(save->expr, env);
        const TypeTag t = graph_.node(uid).type;
        if (t != TypeTag::ValBool && t != TypeTag::ValNum) {
          throw ScriptError(save->loc, "save requires Valuation(Bool) or "
                                       "Valuation(Number), got " + type_name(t));
        }
        graph_.roots().push_back({RootAction::Kind::Save, path, uid, save->loc});
      } else if (const auto* print = std::get_if<PrintCmd>(&cmd)) {
        const Uid uid = expand_expr(print->expr, env);
        const TypeTag t = graph_.node(uid).type;
        if (t != TypeTag::Number && t != TypeTag::Bool) {
          throw ScriptError(print->loc, "print requires a Number or Bool result, got " +
                                            type_name(t));
        }
        graph_.roots().push_back({RootAction::Kind::Print, print->label, uid, print->loc});
      }
    }
    return {std::move(graph_), std::move(loads_)};
  }

private:
  Uid expand_expr(const ExprPtr& e, const Env& env) {
    switch (e->kind) {
      case Expr::Kind::Number:
        return graph_.add_number(e->num, e->loc);
      case Expr::Kind::String:
        return graph_.add_string(e->name, e->loc);
      case Expr::Kind::Ident:
        return expand_ident(*e, env);
      case Expr::Kind::Call:
        return expand_call(*e, env);
    }
    throw std::logic_error("unreachable");
  }

  Uid expand_ident(const Expr& e, const Env& env) {
    if (const EnvEntry* entry = lookup(env, e.name)) {
      switch (entry->kind) {
        case EnvEntry::Kind::Arg:
          return entry->arg_uid;
        case EnvEntry::Kind::Load:
          return graph_.add_load(entry->path, e.loc);
        case EnvEntry::Kind::Let:
          if (!entry->params.empty()) {
            throw ScriptError(e.loc, "'" + e.name + "' takes " +
                                         std::to_string(entry->params.size()) +
                                         " arguments but is used without any");
          }
          return expand_binding(entry, {}, e.loc);
      }
    }
    if (const OpInfo* info = find_builtin(e.name)) {
      if (const OpSig* sig = match_overload(*info, {})) {
        return graph_.add_op(e.name, {}, sig->result, e.loc);
      }
      throw ScriptError(e.loc, "operator '" + e.name + "' requires arguments");
    }
    auto it = load_paths_.find(e.name);
    if (it != load_paths_.end()) return graph_.add_load(it->second, e.loc);
    throw ScriptError(e.loc, "unbound identifier '" + e.name + "'");
  }

  Uid expand_call(const Expr& e, const Env& env) {
    if (const EnvEntry* entry = lookup(env, e.name)) {
      if (entry->kind != EnvEntry::Kind::Let) {
        throw ScriptError(e.loc, "'" + e.name + "' is not a function");
      }
      if (entry->params.size() != e.args.size()) {
        throw ScriptError(e.loc, "'" + e.name + "' takes " +
                                     std::to_string(entry->params.size()) +
                                     " arguments, got " + std::to_string(e.args.size()));
      }
      std::vector<Uid> arg_uids;
      arg_uids.reserve(e.args.size());
      for (const auto& a : e.args) arg_uids.push_back(expand_expr(a, env));
      return expand_binding(entry, arg_uids, e.loc);
    }

    if (const OpInfo* info = find_builtin(e.name)) {
      std::vector<Uid> arg_uids;
      std::vector<TypeTag> arg_types;
      arg_uids.reserve(e.args.size());
      for (const auto& a : e.args) {
        arg_uids.push_back(expand_expr(a, env));
        arg_types.push_back(graph_.node(arg_uids.back()).type);
      }
      const OpSig* sig = match_overload(*info, arg_types);
      if (!sig) {
        std::string got = "(";
        for (std::size_t i = 0; i < arg_types.size(); ++i) {
          if (i) got += ", ";
          got += type_name(arg_types[i]);
        }
        got += ")";
        std::string expected;
        for (const auto& o : info->overloads) {
          if (!expected.empty()) expected += " or ";
          expected += "(";
          for (std::size_t i = 0; i < o.params.size(); ++i) {
            if (i) expected += ", ";
            expected += type_name(o.params[i]);
          }
          expected += ")";
        }
        throw ScriptError(e.loc, "operator '" + e.name + "' cannot be applied to " +
                                     got + "; expected " + expected);
      }
      return graph_.add_op(e.name, std::move(arg_uids), sig->result, e.loc);
    }
    throw ScriptError(e.loc, "unbound identifier '" + e.name + "'");
  }

  // Inlines one let binding applied to already-expanded arguments.
  // Memoised per (binding, argument UIDs) so shared definitions are
  // walked once; a binding re-entered during its own expansion is a
  // recursive definition, which the language rejects.
  Uid expand_binding(const EnvEntry* entry, const std::vector<Uid>& args,
                     const SourceLoc& use) {
    std::string key(reinterpret_cast<const char*>(&entry), sizeof entry);
    for (Uid a : args) key.append(reinterpret_cast<const char*>(&a), sizeof a);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    if (!in_progress_.insert(entry).second) {
      throw ScriptError(use, "recursive definition of '" + entry->name +
                                 "' (the language has no recursion)");
    }
    Env env = entry->decl_env;
    for (std::size_t i = 0; i < args.size(); ++i) {
      auto a = std::make_shared<EnvEntry>();
      a->kind = EnvEntry::Kind::Arg;
      a->name = entry->params[i];
      a->arg_uid = args[i];
      a->prev = env;
      env = std::move(a);
    }
    const Uid uid = expand_expr(entry->body, env);
    in_progress_.erase(entry);
    cache_.emplace(std::move(key), uid);
    return uid;
  }

  const Bindings& bindings_;
  ExprGraph graph_;
  std::vector<LoadedImage> loads_;
  std::unordered_map<std::string, std::string> load_paths_;
  std::unordered_map<std::string, Uid> cache_;
  std::set<const EnvEntry*> in_progress_;
};

}  // namespace

Program load_program(const std::string& path, const Bindings& bindings,
                     const std::string& stdlib_dir, EmbeddedLookup embedded) {
  return ProgramLoader(bindings, stdlib_dir, std::move(embedded)).load_path(path);
}

Program load_program_text(const std::string& text, const std::string& name,
                          const Bindings& bindings, const std::string& stdlib_dir,
                          EmbeddedLookup embedded) {
  return ProgramLoader(bindings, stdlib_dir, std::move(embedded)).load_text(text, name);
}

Expansion expand(const Program& program, const Bindings& bindings) {
  return Expander(bindings).run(program);
}

}  // namespace imgql::dsl
