"""Linear models on the one-hot design matrix: L2-regularized logistic
regression by full-batch gradient descent, and a linear SVM trained by
deterministic full-batch subgradient descent with averaged iterates plus a
single-parameter monotone calibration of its margins.

The bias term is never regularized.
"""

import math

import numpy as np

LOGISTIC_L2 = 1e-4
LOGISTIC_LR = 0.1
LOGISTIC_EPOCHS = 2000
LOGISTIC_TOL = 1e-6

SVM_L2 = 1e-3
SVM_EPOCHS = 200

CALIBRATION_MIN = 1e-6
CALIBRATION_MAX = 1e6


def sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_loss_and_grad(w, b, X, y, l2):
    """Mean log-loss plus (l2/2)*||w||^2, with its analytic gradient.

    y holds 0/1 labels. Kept as a standalone function so the gradient can be
    checked against finite differences of the loss alone.
    """
    z = X @ w + b
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * np.dot(w, w))
    r = (sigmoid(z) - y) / y.shape[0]
    grad_w = X.T @ r + l2 * w
    grad_b = float(r.sum())
    return loss, grad_w, grad_b


def train_logistic(X, y, l2=LOGISTIC_L2, learning_rate=LOGISTIC_LR,
                   epochs=LOGISTIC_EPOCHS, tol=LOGISTIC_TOL):
    """Full-batch gradient descent from zero weights.

    Stops when the gradient infinity-norm drops below tol. Returns the weight
    vector, bias, and the per-epoch loss trace (non-increasing on normalized
    data at the default rate).
    """
    n, d = X.shape
    w = np.zeros(d, dtype=np.float64)
    b = 0.0
    losses = []
    for _ in range(epochs):
        loss, gw, gb = logistic_loss_and_grad(w, b, X, y, l2)
        losses.append(loss)
        gmax = max(float(np.max(np.abs(gw))) if d else 0.0, abs(gb))
        if gmax < tol:
            break
        w = w - learning_rate * gw
        b = b - learning_rate * gb
    return w, b, losses


def train_svm(X, y_pm, l2=SVM_L2, epochs=SVM_EPOCHS):
    """Hinge loss + (l2/2)*||w||^2 by full-batch subgradient descent.

    y_pm holds -1/+1 labels. Step t uses rate 1/(l2*t); after each step the
    weight vector is projected onto the ball of radius 1/sqrt(l2) (bias
    excluded). The returned solution is the average of the per-epoch
    iterates. Full-batch means the subgradient is a mean over rows, so
    duplicating every row leaves the trajectory unchanged.
    """
    n, d = X.shape
    w = np.zeros(d, dtype=np.float64)
    b = 0.0
    w_sum = np.zeros(d, dtype=np.float64)
    b_sum = 0.0
    cap = 1.0 / math.sqrt(l2) if l2 > 0 else math.inf
    for t in range(1, epochs + 1):
        margins = y_pm * (X @ w + b)
        viol = margins < 1.0
        if viol.any():
            gw = l2 * w - (y_pm[viol] @ X[viol]) / n
            gb = -float(y_pm[viol].sum()) / n
        else:
            gw = l2 * w
            gb = 0.0
        eta = 1.0 / (l2 * t) if l2 > 0 else 1.0 / t
        w = w - eta * gw
        b = b - eta * gb
        norm = math.sqrt(float(np.dot(w, w)))
        if norm > cap:
            w = w * (cap / norm)
        w_sum += w
        b_sum += b
    return w_sum / epochs, b_sum / epochs


def calibrate_margins(margins, y):
    """Fit a > 0 minimizing the mean log-loss of sigmoid(a * margin).

    The loss is convex in a, so its derivative is nondecreasing; bisection on
    the derivative over [1e-6, 1e6] finds the minimizer, clamped to that
    interval. A positive slope keeps calibration strictly monotone, which
    preserves the margin ordering exactly.
    """

    def deriv(a):
        return float(np.mean((sigmoid(a * margins) - y) * margins))

    lo, hi = CALIBRATION_MIN, CALIBRATION_MAX
    if deriv(lo) >= 0.0:
        return lo
    if deriv(hi) <= 0.0:
        return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if deriv(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
