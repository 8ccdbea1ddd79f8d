#include "flawlens/facts.hpp"

#include "flawlens/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace flawlens {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kFactsVersion = 1;

ordered_json id_array(const auto& ids) {
    ordered_json arr = ordered_json::array();
    for (const auto& id : ids) arr.push_back(id.str());
    return arr;
}

ordered_json nullable_id(const std::optional<EntityId>& id) {
    return id ? ordered_json(id->str()) : ordered_json(nullptr);
}

class FactsReader {
public:
    explicit FactsReader(std::string origin) : origin_(std::move(origin)) {}

    DesignModel read(const json& root) {
        require_object(root, "");
        check_keys(root, "", {"version", "classes"});
        const auto& version = field(root, "", "version");
        if (!version.is_number_integer() || version.get<long long>() != kFactsVersion) {
            fail("version", "must be the integer " + std::to_string(kFactsVersion));
        }
        const auto& classes = field(root, "", "classes");
        if (!classes.is_array()) fail("classes", "must be an array");
        for (std::size_t i = 0; i < classes.size(); ++i) {
            read_class(classes[i], "classes[" + std::to_string(i) + "]");
        }
        DesignModel model(std::move(classes_), std::move(methods_), std::move(attributes_));
        auto diagnostics = validate(model);
        if (!diagnostics.empty()) {
            std::ostringstream msg;
            msg << prefix() << "facts do not describe a consistent model";
            for (const auto& d : diagnostics) msg << "\n  " << d.code << ": " << d.entity.str() << ": " << d.message;
            throw ModelError(msg.str());
        }
        return model;
    }

private:
    std::string prefix() const { return origin_.empty() ? std::string() : origin_ + ": "; }

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        throw FactsError(prefix() + "field '" + path + "' " + message);
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    void require_object(const json& j, const std::string& path) const {
        if (!j.is_object()) fail(path.empty() ? "<root>" : path, "must be an object");
    }

    void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) const {
        for (const auto& [key, value] : j.items()) {
            bool known = false;
            for (const char* a : allowed) known = known || key == a;
            if (!known) fail(join(path, key), "is not part of the facts schema");
        }
    }

    const json& field(const json& j, const std::string& path, const char* key) const {
        auto it = j.find(key);
        if (it == j.end()) fail(join(path, key), "is missing");
        return *it;
    }

    std::string string_field(const json& j, const std::string& path, const char* key) const {
        const auto& v = field(j, path, key);
        if (!v.is_string()) fail(join(path, key), "must be a string");
        return v.get<std::string>();
    }

    EntityId id_field(const json& j, const std::string& path, const char* key, EntityKind kind) const {
        EntityId id(string_field(j, path, key));
        if (id.kind() != kind) fail(join(path, key), "has the wrong entity prefix: '" + id.str() + "'");
        return id;
    }

    std::optional<EntityId> nullable_id_field(const json& j, const std::string& path, const char* key,
                                              EntityKind kind) const {
        const auto& v = field(j, path, key);
        if (v.is_null()) return std::nullopt;
        return id_field(j, path, key, kind);
    }

    Visibility visibility_field(const json& j, const std::string& path) const {
        auto vis = parse_visibility(string_field(j, path, "visibility"));
        if (!vis) fail(join(path, "visibility"), "must be \"public\" or \"private\"");
        return *vis;
    }

    int int_field(const json& j, const std::string& path, const char* key, int minimum) const {
        const auto& v = field(j, path, key);
        if (!v.is_number_integer()) fail(join(path, key), "must be an integer");
        auto value = v.get<long long>();
        if (value < minimum || value > std::numeric_limits<int>::max()) {
            fail(join(path, key), "must be an integer >= " + std::to_string(minimum));
        }
        return static_cast<int>(value);
    }

    std::set<EntityId> id_set_field(const json& j, const std::string& path, const char* key,
                                    EntityKind kind) const {
        const auto& v = field(j, path, key);
        std::string p = join(path, key);
        if (!v.is_array()) fail(p, "must be an array");
        std::set<EntityId> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::string item = p + "[" + std::to_string(i) + "]";
            if (!v[i].is_string()) fail(item, "must be a string");
            EntityId id(v[i].get<std::string>());
            if (id.kind() != kind) fail(item, "has the wrong entity prefix: '" + id.str() + "'");
            out.insert(std::move(id));
        }
        return out;
    }

    EntityId owner_from_id(const EntityId& id, const std::string& path) const {
        auto owner = id.owner_name();
        if (!owner) fail(join(path, "id"), "must have the form kind:Owner.name");
        return EntityId::for_class(*owner);
    }

    void read_class(const json& j, const std::string& path) {
        require_object(j, path);
        check_keys(j, path, {"id", "name", "superclass", "is_external", "attributes", "methods"});
        ClassEntity cls;
        cls.id = id_field(j, path, "id", EntityKind::Class);
        cls.name = string_field(j, path, "name");
        cls.superclass = nullable_id_field(j, path, "superclass", EntityKind::Class);
        const auto& ext = field(j, path, "is_external");
        if (!ext.is_boolean()) fail(join(path, "is_external"), "must be a boolean");
        cls.is_external = ext.get<bool>();

        const auto& attrs = field(j, path, "attributes");
        if (!attrs.is_array()) fail(join(path, "attributes"), "must be an array");
        for (std::size_t i = 0; i < attrs.size(); ++i) {
            std::string p = join(path, "attributes[" + std::to_string(i) + "]");
            require_object(attrs[i], p);
            check_keys(attrs[i], p, {"id", "name", "visibility"});
            AttributeEntity attr;
            attr.id = id_field(attrs[i], p, "id", EntityKind::Attribute);
            attr.name = string_field(attrs[i], p, "name");
            attr.visibility = visibility_field(attrs[i], p);
            attr.owner = owner_from_id(attr.id, p);
            cls.attributes.push_back(attr.id);
            if (!attributes_.emplace(attr.id, attr).second) fail(join(p, "id"), "duplicates '" + attr.id.str() + "'");
        }

        const auto& methods = field(j, path, "methods");
        if (!methods.is_array()) fail(join(path, "methods"), "must be an array");
        for (std::size_t i = 0; i < methods.size(); ++i) {
            std::string p = join(path, "methods[" + std::to_string(i) + "]");
            require_object(methods[i], p);
            check_keys(methods[i], p,
                       {"id", "name", "visibility", "cyclomatic", "statement_count", "accessor_of", "calls",
                        "accesses"});
            MethodEntity m;
            m.id = id_field(methods[i], p, "id", EntityKind::Method);
            m.name = string_field(methods[i], p, "name");
            m.visibility = visibility_field(methods[i], p);
            m.cyclomatic = int_field(methods[i], p, "cyclomatic", 1);
            m.statement_count = int_field(methods[i], p, "statement_count", 0);
            m.accessor_of = nullable_id_field(methods[i], p, "accessor_of", EntityKind::Attribute);
            m.calls = id_set_field(methods[i], p, "calls", EntityKind::Method);
            m.accesses = id_set_field(methods[i], p, "accesses", EntityKind::Attribute);
            m.owner = owner_from_id(m.id, p);
            cls.methods.push_back(m.id);
            if (!methods_.emplace(m.id, m).second) fail(join(p, "id"), "duplicates '" + m.id.str() + "'");
        }

        if (!classes_.emplace(cls.id, cls).second) fail(join(path, "id"), "duplicates '" + cls.id.str() + "'");
    }

    std::string origin_;
    DesignModel::ClassMap classes_;
    DesignModel::MethodMap methods_;
    DesignModel::AttributeMap attributes_;
};

}  // namespace

std::string facts_to_string(const DesignModel& model) {
    ordered_json root;
    root["version"] = kFactsVersion;
    ordered_json classes = ordered_json::array();
    for (const auto& [id, cls] : model.classes()) {
        ordered_json c;
        c["id"] = id.str();
        c["name"] = cls.name;
        c["superclass"] = nullable_id(cls.superclass);
        c["is_external"] = cls.is_external;

        std::vector<EntityId> attr_ids(cls.attributes);
        std::sort(attr_ids.begin(), attr_ids.end());
        ordered_json attrs = ordered_json::array();
        for (const auto& aid : attr_ids) {
            const auto& a = model.get_attribute(aid);
            ordered_json aj;
            aj["id"] = a.id.str();
            aj["name"] = a.name;
            aj["visibility"] = std::string(to_string(a.visibility));
            attrs.push_back(std::move(aj));
        }
        c["attributes"] = std::move(attrs);

        std::vector<EntityId> method_ids(cls.methods);
        std::sort(method_ids.begin(), method_ids.end());
        ordered_json methods = ordered_json::array();
        for (const auto& mid : method_ids) {
            const auto& m = model.get_method(mid);
            ordered_json mj;
            mj["id"] = m.id.str();
            mj["name"] = m.name;
            mj["visibility"] = std::string(to_string(m.visibility));
            mj["cyclomatic"] = m.cyclomatic;
            mj["statement_count"] = m.statement_count;
            mj["accessor_of"] = nullable_id(m.accessor_of);
            mj["calls"] = id_array(m.calls);
            mj["accesses"] = id_array(m.accesses);
            methods.push_back(std::move(mj));
        }
        c["methods"] = std::move(methods);
        classes.push_back(std::move(c));
    }
    root["classes"] = std::move(classes);
    return root.dump(2) + "\n";
}

DesignModel facts_from_string(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FactsError((origin.empty() ? std::string() : origin + ": ") + "malformed JSON: " + e.what());
    }
    return FactsReader(origin).read(root);
}

void save_facts(const DesignModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write facts file '" + path + "'");
    out << facts_to_string(model);
    if (!out) throw IoError("failed writing facts file '" + path + "'");
}

DesignModel load_facts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read facts file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return facts_from_string(buf.str(), path);
}

}  // namespace flawlens
