from fillorder.instances import erdos_renyi


def random_graphs(count, n, p, seed0=0):
    return [erdos_renyi(n, p, seed=seed0 + i) for i in range(count)]
