package shapes;

import util.MathKit;

public class Circle extends Shape {
    private double radius; // cached, never negative

    public Circle(int id, double radius) {
        super(id);
        this.radius = radius;
    }

    public double area() {
        return MathKit.PI * radius * radius;
    }

    public double getRadius() {
        return radius;
    }

    public void setRadius(double radius) {
        this.radius = radius;
    }
}
