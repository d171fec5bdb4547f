#include "fringe/tree_text.hpp"

namespace fringe {

Tree parse_tree(std::string_view text) {
    Tree t;
    t.reserve(text.size() / 2 + 1);

    struct Frame {
        NodeId child[2];
        int count = 0;
    };
    std::vector<Frame> frames;
    NodeId root = kNilNode;
    bool complete = false;
    std::size_t pos = 0;

    auto deliver = [&](NodeId id) {
        if (frames.empty()) {
            if (complete) throw ParseError(pos, "trailing input after complete tree");
            root = id;
            complete = true;
            return;
        }
        Frame& f = frames.back();
        if (f.count == 2) throw ParseError(pos, "node has more than two subtrees");
        f.child[f.count++] = id;
    };

    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        switch (c) {
            case 'L':
                deliver(t.add_leaf());
                break;
            case '(':
                if (complete && frames.empty())
                    throw ParseError(pos, "trailing input after complete tree");
                frames.push_back({});
                break;
            case ')': {
                if (frames.empty()) throw ParseError(pos, "unmatched ')'");
                Frame f = frames.back();
                frames.pop_back();
                if (f.count != 2)
                    throw ParseError(pos, "internal node needs exactly two subtrees");
                deliver(t.add_internal(f.child[0], f.child[1]));
                break;
            }
            default:
                throw ParseError(pos, std::string("unexpected character '") + c + "'");
        }
    }
    if (!frames.empty() || !complete) throw ParseError(pos, "unexpected end of input");
    t.set_root(root);
    return t;
}

void format_tree(const Tree& t, std::string& out) {
    // Pre-order with an explicit stack; kNilNode entries emit ')'.
    std::vector<NodeId> stack{t.root()};
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        if (id == kNilNode) {
            out.push_back(')');
            continue;
        }
        const Tree::Node& nd = t.node(id);
        if (nd.is_leaf()) {
            out.push_back('L');
        } else {
            out.push_back('(');
            stack.push_back(kNilNode);
            stack.push_back(nd.right);
            stack.push_back(nd.left);
        }
    }
}

std::string format_tree(const Tree& t) {
    std::string out;
    out.reserve(static_cast<std::size_t>(2 * t.node_count()));
    format_tree(t, out);
    return out;
}

}  // namespace fringe
