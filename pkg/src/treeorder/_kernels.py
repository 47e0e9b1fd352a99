"""Jitted hot paths: generator advance, Wilson sampling, tree traversals.

Regions are passed as CSR adjacency (indptr/indices over local vertex ids,
local id order == raster order) so the rejection loops in completion and
bench never touch Python objects.  The generator update must stay
bit-identical to rng.Rng.
"""

import numba as nb
import numpy as np

_U64_MAX = np.uint64(0xFFFFFFFFFFFFFFFF)


@nb.njit(nb.uint64(nb.uint64[::1]), cache=True, nogil=True)
def rng_next_u64(state):
    x = state[1] * np.uint64(5)
    result = ((x << np.uint64(7)) | (x >> np.uint64(57))) * np.uint64(9)
    t = state[1] << np.uint64(17)
    state[2] ^= state[0]
    state[3] ^= state[1]
    state[1] ^= state[2]
    state[0] ^= state[3]
    state[2] ^= t
    state[3] = (state[3] << np.uint64(45)) | (state[3] >> np.uint64(19))
    return result


@nb.njit(nb.int64(nb.uint64[::1], nb.int64), cache=True, nogil=True)
def rng_randbelow(state, n):
    un = np.uint64(n)
    limit = (_U64_MAX // un) * un
    while True:
        x = rng_next_u64(state)
        if x < limit:
            return np.int64(x % un)


@nb.njit(cache=True, nogil=True)
def wilson_parent(indptr, indices, root, state):
    """Uniform spanning tree of a connected CSR graph; parent[root] == root.

    Loop-erased random walks start from every vertex in ascending id order;
    loop erasure happens implicitly by overwriting parent pointers on
    revisits (cycle popping), which is step-for-step the standard erasure.
    """
    n = indptr.shape[0] - 1
    parent = np.empty(n, dtype=np.int32)
    in_tree = np.zeros(n, dtype=np.bool_)
    parent[root] = np.int32(root)
    in_tree[root] = True
    for i in range(n):
        u = np.int64(i)
        while not in_tree[u]:
            lo = np.int64(indptr[u])
            deg = np.int64(indptr[u + 1]) - lo
            parent[u] = indices[lo + rng_randbelow(state, deg)]
            u = np.int64(parent[u])
        u = np.int64(i)
        while not in_tree[u]:
            in_tree[u] = True
            u = np.int64(parent[u])
    return parent


@nb.njit(cache=True, nogil=True)
def tree_traverse(parent, root, depth_first):
    """Visit order and depths of a parent-array tree.

    Children of each vertex are explored in ascending id order; BFS is FIFO,
    DFS is preorder.
    """
    n = parent.shape[0]
    ptr = np.zeros(n + 1, dtype=np.int32)
    for v in range(n):
        if v != root:
            ptr[parent[v] + 1] += 1
    for i in range(n):
        ptr[i + 1] += ptr[i]
    child = np.empty(max(n - 1, 0), dtype=np.int32)
    cursor = ptr[:n].copy()
    for v in range(n):
        if v != root:
            p = parent[v]
            child[cursor[p]] = v
            cursor[p] += 1
    order = np.empty(n, dtype=np.int32)
    depth = np.zeros(n, dtype=np.int32)
    if depth_first:
        stack = np.empty(n, dtype=np.int32)
        stack[0] = root
        top = 1
        k = 0
        while top > 0:
            top -= 1
            v = stack[top]
            order[k] = v
            k += 1
            for j in range(ptr[v + 1] - 1, ptr[v] - 1, -1):
                c = child[j]
                depth[c] = depth[v] + 1
                stack[top] = c
                top += 1
    else:
        order[0] = root
        tail = 1
        head = 0
        while head < tail:
            v = order[head]
            head += 1
            for j in range(ptr[v], ptr[v + 1]):
                c = child[j]
                depth[c] = depth[v] + 1
                order[tail] = c
                tail += 1
    return order, depth


@nb.njit(cache=True, nogil=True)
def grow_mask(h, w, target, max_attempts, state):
    """Grow a connected mask of `target` cells by random adjacent accretion.

    Each attempt starts from a uniform cell; every growth step picks a
    uniform masked cell that still has an unmasked neighbor, then absorbs a
    uniform unmasked neighbor of it.  Attempts whose complement is
    disconnected or that cover all four corners are rejected wholesale.
    Returns (mask flags, attempts); the flags array is empty when the
    attempt budget runs out.

    Cell selection redraws lazily over the masked-cells list, skipping cells
    whose unmasked-neighbor count has dropped to zero.
    """
    n = h * w
    masked = np.zeros(n, dtype=np.bool_)
    open_cnt = np.zeros(n, dtype=np.int32)
    cells = np.empty(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    visited = np.zeros(n, dtype=np.bool_)
    nbr = np.empty(4, dtype=np.int64)

    def _nbrs(v):
        # neighbor enumeration order (up, left, right, down) is raster-ascending
        r = v // w
        c = v % w
        cnt = 0
        if r > 0:
            nbr[cnt] = v - w
            cnt += 1
        if c > 0:
            nbr[cnt] = v - 1
            cnt += 1
        if c + 1 < w:
            nbr[cnt] = v + 1
            cnt += 1
        if r + 1 < h:
            nbr[cnt] = v + w
            cnt += 1
        return cnt

    for attempt in range(1, max_attempts + 1):
        for i in range(n):
            masked[i] = False
        start = rng_randbelow(state, n)
        masked[start] = True
        cells[0] = start
        csize = 1
        open_cnt[start] = _nbrs(start)
        while csize < target:
            while True:
                m = np.int64(cells[rng_randbelow(state, csize)])
                if open_cnt[m] > 0:
                    break
            cnt = _nbrs(m)
            k = rng_randbelow(state, open_cnt[m])
            v = np.int64(-1)
            seen_open = 0
            for j in range(cnt):
                if not masked[nbr[j]]:
                    if seen_open == k:
                        v = nbr[j]
                        break
                    seen_open += 1
            masked[v] = True
            cells[csize] = v
            csize += 1
            vcnt = _nbrs(v)
            oc = 0
            for j in range(vcnt):
                u = nbr[j]
                if masked[u]:
                    open_cnt[u] -= 1
                else:
                    oc += 1
            open_cnt[v] = oc
        if masked[0] and masked[w - 1] and masked[(h - 1) * w] and masked[n - 1]:
            continue
        first = -1
        for i in range(n):
            visited[i] = False
            if first < 0 and not masked[i]:
                first = i
        head = 0
        tail = 0
        queue[tail] = first
        tail += 1
        visited[first] = True
        seen = 1
        while head < tail:
            u = np.int64(queue[head])
            head += 1
            ucnt = _nbrs(u)
            for j in range(ucnt):
                x = nbr[j]
                if not masked[x] and not visited[x]:
                    visited[x] = True
                    queue[tail] = x
                    tail += 1
                    seen += 1
        if seen == n - target:
            return masked.copy(), attempt
    return np.zeros(0, dtype=np.bool_), max_attempts


@nb.njit(cache=True, nogil=True)
def completion_trials(indptr, indices, root, in_boundary, depth_first, max_trials, state):
    """Rejection loop for postfix completion on the unmasked region.

    BFS accepts when some maximum-depth vertex lies on the mask boundary;
    DFS accepts when the last-visited vertex does.  Returns
    (trials, accepted, parent) with parent from the final tree sampled.
    """
    n = indptr.shape[0] - 1
    parent = np.empty(n, dtype=np.int32)
    trials = 0
    while trials < max_trials:
        trials += 1
        parent = wilson_parent(indptr, indices, root, state)
        order, depth = tree_traverse(parent, root, depth_first)
        if depth_first:
            if in_boundary[order[n - 1]]:
                return trials, True, parent
        else:
            dmax = np.int32(0)
            for v in range(n):
                if depth[v] > dmax:
                    dmax = depth[v]
            for v in range(n):
                if depth[v] == dmax and in_boundary[v]:
                    return trials, True, parent
    return trials, False, parent
